////////////////////////////////////////////////////////////////////////////////
// liealg.hpp
//
// GL(3)/gl(3) machinery: left actions of the group on small tensor spaces,
// their infinitesimal (algebra) counterparts, stabilizer subalgebras by
// nullspace computation, orbit dimensions, the matrix exponential, and
// principal-angle comparison of subspaces of gl(3).
//
// Conventions. H-values are stored flat (row-major for matrix-shaped
// representations). A group element acts on the left on H; the right action
// on frames is plain matrix multiplication and lives in fields.hpp. The
// stabilizer of a value u is computed at the Lie-algebra level: the connected
// component of the isotropy group. Components not reachable by exp (e.g.
// det = -1 elements) are outside the computed object.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace gstr {

/// Invertibility floor used across the toolkit.
inline constexpr double kSingularTol = 1e-10;

/// Relative singular-value threshold below which a direction counts as null.
inline constexpr double kNullspaceTol = 1e-9;

using GroupElement = Eigen::Matrix3d;    // |det| > kSingularTol where required
using AlgebraElement = Eigen::Matrix3d;  // gl(3) is all of 3x3

/// How GL(3) acts on the value space H. Covers (p,q) tensors with p+q <= 2.
class Representation {
 public:
  enum class Tag {
    Scalar,        // (0,0): trivial action
    Vector,        // (1,0): v -> g v
    Covector,      // (0,1): w -> w g^{-1}
    Contravariant2,// (2,0): T -> g T g^T
    BilinearForm,  // (0,2): B -> g^{-T} B g^{-1}
    Mixed11,       // (1,1): M -> g M g^{-1}
  };

  static Representation scalar() { return Representation(Tag::Scalar); }
  static Representation vector() { return Representation(Tag::Vector); }
  static Representation covector() { return Representation(Tag::Covector); }
  static Representation bilinear_form() { return Representation(Tag::BilinearForm); }
  /// (p,q) with p+q <= 2; throws std::invalid_argument otherwise.
  static Representation tensor(int contravariant, int covariant);

  Tag tag() const { return tag_; }
  int dim() const;
  std::string name() const;

  /// Matrix-shaped value helpers (row-major flattening). dim()==9 tags only.
  Eigen::Matrix3d to_matrix(const Eigen::VectorXd& u) const;
  Eigen::VectorXd from_matrix(const Eigen::Matrix3d& m) const;

 private:
  explicit Representation(Tag t) : tag_(t) {}
  Tag tag_;
};

/// Left action of g on u. Throws std::invalid_argument when g is singular.
Eigen::VectorXd act(const GroupElement& g, const Eigen::VectorXd& u, const Representation& rep);

/// Infinitesimal action: d/dt act(exp(tA), u) at t = 0.
Eigen::VectorXd algebra_act(const AlgebraElement& A, const Eigen::VectorXd& u,
                            const Representation& rep);

/// Orthonormal (Frobenius) basis of a subspace of gl(3).
struct SubalgebraBasis {
  std::vector<Eigen::Matrix3d> elements;
  bool unimodular = false;  // trace-zero constraint was applied

  int dim() const { return static_cast<int>(elements.size()); }

  /// 9 x dim matrix of row-major flattened basis elements.
  Eigen::MatrixXd as_columns() const;

  /// Frobenius norm of M minus its orthogonal projection onto the span.
  double projection_residual(const Eigen::Matrix3d& m) const;
};

/// Stabilizer subalgebra {A : algebra_act(A, u) = 0}, intersected with the
/// trace-zero hyperplane when `unimodular` is set. The basis is orthonormal
/// and deterministically ordered by descending alignment with the canonical
/// E_ij basis (row-major order, ties to the earlier index).
SubalgebraBasis isotropy_algebra(const Eigen::VectorXd& u, const Representation& rep,
                                 bool unimodular = false);

/// Dimension of the orbit tangent space at u: 9 - dim isotropy (unconstrained).
int orbit_tangent_dim(const Eigen::VectorXd& u, const Representation& rep);

/// Matrix exponential (Pade scaling-and-squaring).
GroupElement exp_matrix(const AlgebraElement& a);

struct SubalgebraComparison {
  bool equal = false;
  int dim_a = 0;
  int dim_b = 0;
  double max_principal_angle = 0.0;  // radians; over min(dim_a, dim_b) angle pairs
};

/// Equal spans test: dimensions match and the largest principal angle between
/// the spans is at most `tol` radians.
SubalgebraComparison subalgebra_equal(const SubalgebraBasis& a, const SubalgebraBasis& b,
                                      double tol = 1e-6);

class Rng;

/// exp of a random combination of basis elements, coefficients uniform in
/// [-scale, scale]. Deterministic per seed; empty basis gives the identity.
GroupElement random_group_element(const SubalgebraBasis& basis, double scale, std::uint64_t seed);
GroupElement random_group_element(const SubalgebraBasis& basis, double scale, Rng& rng);

}  // namespace gstr
