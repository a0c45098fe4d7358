////////////////////////////////////////////////////////////////////////////////
// fields.hpp
//
// Chart-based body manifold and the field types living on it: vector fields,
// 1-forms, frames and (co)frame fields, plus the differential operators that
// feed the defect criteria (exterior derivative, Lie bracket) and the
// component extractions that realize tensors of type H.
//
// The body is a single chart: an axis-aligned box with coordinates X1, X2, X3
// and a verification grid. Frames are stored relative to the coordinate
// basis, so the right GL(3) action is literal matrix multiplication.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>

#include "gstr/expr.hpp"
#include "gstr/liealg.hpp"

namespace gstr {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Single coordinate chart with a sampling grid. Node order is lexicographic
/// with the X3 index fastest.
class Chart {
 public:
  Chart(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
        const std::array<int, 3>& resolution);

  static const std::array<std::string, 3>& coordinate_names();

  const Eigen::Vector3d& lo() const { return lo_; }
  const Eigen::Vector3d& hi() const { return hi_; }
  const std::array<int, 3>& resolution() const { return res_; }

  int node_count() const { return res_[0] * res_[1] * res_[2]; }
  std::array<int, 3> node_indices(int flat) const;
  Eigen::Vector3d node(int flat) const;

  Bindings bindings(const Eigen::Vector3d& x) const;

 private:
  Eigen::Vector3d lo_, hi_;
  std::array<int, 3> res_;
};

struct VectorField {
  std::array<Expr, 3> component;  // contravariant, in the coordinate basis

  Eigen::Vector3d eval(const Chart& chart, const Eigen::Vector3d& x) const;
};

struct OneForm {
  std::array<Expr, 3> component;  // covariant

  Eigen::Vector3d eval(const Chart& chart, const Eigen::Vector3d& x) const;

  /// Smallest over grid nodes of the max-norm of the component triple.
  double min_sup_norm_on_grid(const Chart& chart) const;
};

/// Antisymmetric 2-form, stored as the independent components
/// (d01, d02, d12) in 0-based index order.
struct TwoForm {
  std::array<Expr, 3> independent;

  Eigen::Vector3d eval(const Chart& chart, const Eigen::Vector3d& x) const;
  double max_abs(const Chart& chart, const Eigen::Vector3d& x) const;
};

/// Pointwise basis of the tangent space: columns of `matrix` are the basis
/// vectors in the coordinate basis. |det| must exceed kSingularTol.
struct Frame {
  Eigen::Vector3d base;
  Eigen::Matrix3d matrix;

  Frame(const Eigen::Vector3d& base_point, const Eigen::Matrix3d& m);
};

/// Right action of GL(3): columns transform as f.matrix * g (base unchanged).
Frame frame_right_action(const Frame& f, const GroupElement& g);

struct CoframeField;

/// Moving frame: entry (i, j) is coordinate component i of basis vector j.
struct FrameField {
  std::array<std::array<Expr, 3>, 3> entry;

  static FrameField coordinate();  // identity columns
  static FrameField from_columns(const std::array<std::array<Expr, 3>, 3>& columns);

  Eigen::Matrix3d eval(const Chart& chart, const Eigen::Vector3d& x) const;
  VectorField column(int j) const;
};

/// Moving coframe: row a is the a-th covector field.
struct CoframeField {
  std::array<OneForm, 3> row;

  Eigen::Matrix3d eval(const Chart& chart, const Eigen::Vector3d& x) const;

  /// Pointwise inverse as a frame field (columns dual to the rows).
  FrameField dual_frame() const;
};

/// Components w_alpha = sum_i omega_i(X) f^i_alpha of a covector in a frame.
Eigen::RowVector3d covector_components(const OneForm& omega, const Frame& f, const Chart& chart);

/// Components of a vector in a frame: solve f.matrix * c = V(X).
Eigen::Vector3d vector_components(const VectorField& v, const Frame& f, const Chart& chart);

/// (d omega)_ij = d_i omega_j - d_j omega_i; antisymmetry is exact by
/// construction, only the independent components are stored.
TwoForm exterior_derivative(const OneForm& omega);

/// [V, W]^i = sum_j (V^j d_j W^i - W^j d_j V^i), symbolic.
VectorField lie_bracket(const VectorField& v, const VectorField& w);

/// Symbolic pointwise inverse of the frame field (adjugate over determinant).
/// Throws FieldError naming the first grid node where the frame is singular.
CoframeField dual_coframe(const FrameField& e, const Chart& chart);

/// Coframe whose first row is omega; the remaining rows are the coordinate
/// covectors dX^j, dX^k for the two indices other than the pivot, where the
/// pivot is the component of omega with the largest magnitude floor over the
/// grid. Throws FieldError if omega vanishes at a node or the result is
/// singular somewhere on the grid.
CoframeField adapted_coframe(const OneForm& omega, const Chart& chart);

/// A tensor of type H: an equivariant H-valued quantity, recorded as its
/// value at a reference frame together with the representation that moves it.
struct TensorTypeH {
  Representation rep;
  Eigen::VectorXd value;
};

}  // namespace gstr
