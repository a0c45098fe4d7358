#include "gstr/liealg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

#include "gstr/rng.hpp"

namespace gstr {

Representation Representation::tensor(int contravariant, int covariant) {
  if (contravariant < 0 || covariant < 0 || contravariant + covariant > 2) {
    throw std::invalid_argument("representation must be a (p,q) tensor with p+q <= 2");
  }
  const int key = contravariant * 10 + covariant;
  switch (key) {
    case 0: return Representation(Tag::Scalar);
    case 10: return Representation(Tag::Vector);
    case 1: return Representation(Tag::Covector);
    case 20: return Representation(Tag::Contravariant2);
    case 2: return Representation(Tag::BilinearForm);
    case 11: return Representation(Tag::Mixed11);
  }
  throw std::invalid_argument("unreachable tensor type");
}

int Representation::dim() const {
  switch (tag_) {
    case Tag::Scalar: return 1;
    case Tag::Vector:
    case Tag::Covector: return 3;
    default: return 9;
  }
}

std::string Representation::name() const {
  switch (tag_) {
    case Tag::Scalar: return "scalar";
    case Tag::Vector: return "vector";
    case Tag::Covector: return "covector";
    case Tag::Contravariant2: return "tensor(2,0)";
    case Tag::BilinearForm: return "bilinear-form";
    case Tag::Mixed11: return "tensor(1,1)";
  }
  return "?";
}

Eigen::Matrix3d Representation::to_matrix(const Eigen::VectorXd& u) const {
  if (dim() != 9 || u.size() != 9) {
    throw std::invalid_argument("to_matrix requires a 9-dimensional representation value");
  }
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = u(3 * i + j);
  return m;
}

Eigen::VectorXd Representation::from_matrix(const Eigen::Matrix3d& m) const {
  if (dim() != 9) {
    throw std::invalid_argument("from_matrix requires a 9-dimensional representation value");
  }
  Eigen::VectorXd u(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) u(3 * i + j) = m(i, j);
  return u;
}

namespace {

void check_value_size(const Eigen::VectorXd& u, const Representation& rep) {
  if (u.size() != rep.dim()) {
    throw std::invalid_argument("H-value has size " + std::to_string(u.size()) +
                                ", expected " + std::to_string(rep.dim()));
  }
}

Eigen::Matrix3d checked_inverse(const GroupElement& g) {
  if (std::abs(g.determinant()) <= kSingularTol) {
    throw std::invalid_argument("group element is singular");
  }
  return g.inverse();
}

}  // namespace

Eigen::VectorXd act(const GroupElement& g, const Eigen::VectorXd& u, const Representation& rep) {
  check_value_size(u, rep);
  using Tag = Representation::Tag;
  switch (rep.tag()) {
    case Tag::Scalar:
      (void)checked_inverse(g);
      return u;
    case Tag::Vector: {
      if (std::abs(g.determinant()) <= kSingularTol) {
        throw std::invalid_argument("group element is singular");
      }
      return g * u;
    }
    case Tag::Covector: {
      const Eigen::Matrix3d ginv = checked_inverse(g);
      return (u.transpose() * ginv).transpose();
    }
    case Tag::Contravariant2: {
      if (std::abs(g.determinant()) <= kSingularTol) {
        throw std::invalid_argument("group element is singular");
      }
      return rep.from_matrix(g * rep.to_matrix(u) * g.transpose());
    }
    case Tag::BilinearForm: {
      const Eigen::Matrix3d ginv = checked_inverse(g);
      return rep.from_matrix(ginv.transpose() * rep.to_matrix(u) * ginv);
    }
    case Tag::Mixed11: {
      const Eigen::Matrix3d ginv = checked_inverse(g);
      return rep.from_matrix(g * rep.to_matrix(u) * ginv);
    }
  }
  throw std::invalid_argument("unknown representation");
}

Eigen::VectorXd algebra_act(const AlgebraElement& A, const Eigen::VectorXd& u,
                            const Representation& rep) {
  check_value_size(u, rep);
  using Tag = Representation::Tag;
  switch (rep.tag()) {
    case Tag::Scalar:
      return Eigen::VectorXd::Zero(1);
    case Tag::Vector:
      return A * u;
    case Tag::Covector:
      return -(u.transpose() * A).transpose();
    case Tag::Contravariant2: {
      const Eigen::Matrix3d T = rep.to_matrix(u);
      return rep.from_matrix(A * T + T * A.transpose());
    }
    case Tag::BilinearForm: {
      const Eigen::Matrix3d B = rep.to_matrix(u);
      return rep.from_matrix(-(A.transpose() * B + B * A));
    }
    case Tag::Mixed11: {
      const Eigen::Matrix3d M = rep.to_matrix(u);
      return rep.from_matrix(A * M - M * A);
    }
  }
  throw std::invalid_argument("unknown representation");
}

Eigen::MatrixXd SubalgebraBasis::as_columns() const {
  Eigen::MatrixXd cols(9, dim());
  for (int k = 0; k < dim(); ++k) {
    const Eigen::Matrix3d& m = elements[static_cast<std::size_t>(k)];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) cols(3 * i + j, k) = m(i, j);
  }
  return cols;
}

double SubalgebraBasis::projection_residual(const Eigen::Matrix3d& m) const {
  Eigen::VectorXd v(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v(3 * i + j) = m(i, j);
  for (const Eigen::Matrix3d& e : elements) {
    Eigen::VectorXd ev(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) ev(3 * i + j) = e(i, j);
    v -= ev.dot(v) * ev;
  }
  return v.norm();
}

namespace {

// Deterministic reordering of a nullspace: pivoted Gram-Schmidt over the
// projections of the canonical E_ij matrices onto the span. Each step takes
// the candidate of largest remaining norm (earlier canonical index on ties),
// so the basis aligns with E_ij order regardless of SVD vagaries.
std::vector<Eigen::VectorXd> canonical_order(const Eigen::MatrixXd& null_cols) {
  const int k = static_cast<int>(null_cols.cols());
  std::vector<Eigen::VectorXd> chosen;
  if (k == 0) return chosen;

  const Eigen::MatrixXd projector = null_cols * null_cols.transpose();  // 9x9
  std::vector<Eigen::VectorXd> candidates(9);
  for (int c = 0; c < 9; ++c) candidates[static_cast<std::size_t>(c)] = projector.col(c);

  chosen.reserve(static_cast<std::size_t>(k));
  while (static_cast<int>(chosen.size()) < k) {
    int best = -1;
    double best_norm = 1e-7;  // below this a candidate adds nothing new
    for (int c = 0; c < 9; ++c) {
      const double n = candidates[static_cast<std::size_t>(c)].norm();
      if (n > best_norm) {
        best = c;
        best_norm = n;
      }
    }
    if (best < 0) break;  // numerically exhausted; fall back below
    Eigen::VectorXd v = candidates[static_cast<std::size_t>(best)] / best_norm;
    for (int c = 0; c < 9; ++c) {
      auto& cand = candidates[static_cast<std::size_t>(c)];
      cand -= v.dot(cand) * v;
    }
    chosen.push_back(std::move(v));
  }

  // The canonical projections span the space, so this only triggers on
  // pathological round-off; complete from the SVD vectors if it does.
  for (int c = 0; c < k && static_cast<int>(chosen.size()) < k; ++c) {
    Eigen::VectorXd v = null_cols.col(c);
    for (const auto& u : chosen) v -= u.dot(v) * u;
    if (v.norm() > 1e-10) chosen.push_back(v.normalized());
  }
  return chosen;
}

Eigen::Matrix3d unflatten(const Eigen::VectorXd& v) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v(3 * i + j);
  return m;
}

// Stacked linear system whose kernel is the stabilizer: one column per
// canonical E_ij, rows are the components of algebra_act(E_ij, u).
Eigen::MatrixXd stabilizer_system(const Eigen::VectorXd& u, const Representation& rep,
                                  bool unimodular) {
  const int h = rep.dim();
  Eigen::MatrixXd system(h + (unimodular ? 1 : 0), 9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Eigen::Matrix3d basis = Eigen::Matrix3d::Zero();
      basis(i, j) = 1.0;
      system.block(0, 3 * i + j, h, 1) = algebra_act(basis, u, rep);
    }
  }
  if (unimodular) {
    Eigen::RowVectorXd trace_row = Eigen::RowVectorXd::Zero(9);
    trace_row(0) = trace_row(4) = trace_row(8) = 1.0;
    system.row(h) = trace_row;
  }
  return system;
}

Eigen::MatrixXd nullspace_columns(const Eigen::MatrixXd& system) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  const double threshold = kNullspaceTol * sigma_max;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  return svd.matrixV().rightCols(9 - rank);
}

}  // namespace

SubalgebraBasis isotropy_algebra(const Eigen::VectorXd& u, const Representation& rep,
                                 bool unimodular) {
  check_value_size(u, rep);
  const Eigen::MatrixXd null_cols = nullspace_columns(stabilizer_system(u, rep, unimodular));
  SubalgebraBasis out;
  out.unimodular = unimodular;
  for (const Eigen::VectorXd& v : canonical_order(null_cols)) out.elements.push_back(unflatten(v));
  return out;
}

int orbit_tangent_dim(const Eigen::VectorXd& u, const Representation& rep) {
  check_value_size(u, rep);
  const Eigen::MatrixXd null_cols =
      nullspace_columns(stabilizer_system(u, rep, /*unimodular=*/false));
  return 9 - static_cast<int>(null_cols.cols());
}

GroupElement exp_matrix(const AlgebraElement& a) { return a.exp(); }

SubalgebraComparison subalgebra_equal(const SubalgebraBasis& a, const SubalgebraBasis& b,
                                      double tol) {
  SubalgebraComparison cmp;
  cmp.dim_a = a.dim();
  cmp.dim_b = b.dim();
  if (cmp.dim_a == 0 && cmp.dim_b == 0) {
    cmp.equal = true;
    cmp.max_principal_angle = 0.0;
    return cmp;
  }
  if (cmp.dim_a == 0 || cmp.dim_b == 0) {
    cmp.equal = false;
    cmp.max_principal_angle = M_PI / 2.0;
    return cmp;
  }
  // Principal angles: cosines are the singular values of A^T B for
  // orthonormal basis matrices A, B.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.as_columns().transpose() * b.as_columns());
  const auto& sv = svd.singularValues();
  double min_cos = 1.0;
  for (int i = 0; i < sv.size(); ++i) min_cos = std::min(min_cos, sv(i));
  min_cos = std::clamp(min_cos, -1.0, 1.0);
  cmp.max_principal_angle = std::acos(min_cos);
  cmp.equal = (cmp.dim_a == cmp.dim_b) && (cmp.max_principal_angle <= tol);
  return cmp;
}

GroupElement random_group_element(const SubalgebraBasis& basis, double scale, Rng& rng) {
  if (scale <= 0.0) throw std::invalid_argument("scale must be positive");
  Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
  for (const Eigen::Matrix3d& e : basis.elements) a += rng.symmetric(scale) * e;
  return exp_matrix(a);
}

GroupElement random_group_element(const SubalgebraBasis& basis, double scale,
                                  std::uint64_t seed) {
  Rng rng(seed);
  return random_group_element(basis, scale, rng);
}

}  // namespace gstr
