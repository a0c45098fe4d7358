#include "gstr/fields.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gstr {

namespace {

std::string node_label(const Chart& chart, int flat) {
  const Eigen::Vector3d x = chart.node(flat);
  std::ostringstream oss;
  oss << "node " << flat << " at (" << x(0) << ", " << x(1) << ", " << x(2) << ")";
  return oss.str();
}

}  // namespace

Chart::Chart(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
             const std::array<int, 3>& resolution)
    : lo_(lo), hi_(hi), res_(resolution) {
  for (int i = 0; i < 3; ++i) {
    if (!(lo_(i) < hi_(i))) {
      throw FieldError("chart bounds must satisfy lo < hi on every axis");
    }
    if (res_[static_cast<std::size_t>(i)] < 2) {
      throw FieldError("chart resolution must be at least 2 per axis");
    }
  }
}

const std::array<std::string, 3>& Chart::coordinate_names() {
  static const std::array<std::string, 3> names{"X1", "X2", "X3"};
  return names;
}

std::array<int, 3> Chart::node_indices(int flat) const {
  const int n3 = res_[2];
  const int n2 = res_[1];
  return {flat / (n2 * n3), (flat / n3) % n2, flat % n3};
}

Eigen::Vector3d Chart::node(int flat) const {
  const std::array<int, 3> idx = node_indices(flat);
  Eigen::Vector3d x;
  for (int i = 0; i < 3; ++i) {
    const int n = res_[static_cast<std::size_t>(i)];
    x(i) = lo_(i) + (hi_(i) - lo_(i)) * static_cast<double>(idx[static_cast<std::size_t>(i)]) /
                        static_cast<double>(n - 1);
  }
  return x;
}

Bindings Chart::bindings(const Eigen::Vector3d& x) const {
  const auto& names = coordinate_names();
  return Bindings{{names[0], x(0)}, {names[1], x(1)}, {names[2], x(2)}};
}

Eigen::Vector3d VectorField::eval(const Chart& chart, const Eigen::Vector3d& x) const {
  const Bindings b = chart.bindings(x);
  return {component[0].eval(b), component[1].eval(b), component[2].eval(b)};
}

Eigen::Vector3d OneForm::eval(const Chart& chart, const Eigen::Vector3d& x) const {
  const Bindings b = chart.bindings(x);
  return {component[0].eval(b), component[1].eval(b), component[2].eval(b)};
}

double OneForm::min_sup_norm_on_grid(const Chart& chart) const {
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < chart.node_count(); ++k) {
    worst = std::min(worst, eval(chart, chart.node(k)).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

Eigen::Vector3d TwoForm::eval(const Chart& chart, const Eigen::Vector3d& x) const {
  const Bindings b = chart.bindings(x);
  return {independent[0].eval(b), independent[1].eval(b), independent[2].eval(b)};
}

double TwoForm::max_abs(const Chart& chart, const Eigen::Vector3d& x) const {
  return eval(chart, x).cwiseAbs().maxCoeff();
}

Frame::Frame(const Eigen::Vector3d& base_point, const Eigen::Matrix3d& m)
    : base(base_point), matrix(m) {
  if (std::abs(matrix.determinant()) <= kSingularTol) {
    throw FieldError("frame matrix is singular");
  }
}

Frame frame_right_action(const Frame& f, const GroupElement& g) {
  if (std::abs(g.determinant()) <= kSingularTol) {
    throw FieldError("right action by a singular group element");
  }
  return Frame(f.base, f.matrix * g);
}

FrameField FrameField::coordinate() {
  FrameField e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      e.entry[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          Expr::constant(i == j ? 1.0 : 0.0);
  return e;
}

FrameField FrameField::from_columns(const std::array<std::array<Expr, 3>, 3>& columns) {
  FrameField e;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i)
      e.entry[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return e;
}

Eigen::Matrix3d FrameField::eval(const Chart& chart, const Eigen::Vector3d& x) const {
  const Bindings b = chart.bindings(x);
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m(i, j) = entry[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(b);
  return m;
}

VectorField FrameField::column(int j) const {
  return VectorField{{entry[0][static_cast<std::size_t>(j)],
                      entry[1][static_cast<std::size_t>(j)],
                      entry[2][static_cast<std::size_t>(j)]}};
}

Eigen::Matrix3d CoframeField::eval(const Chart& chart, const Eigen::Vector3d& x) const {
  Eigen::Matrix3d m;
  for (int a = 0; a < 3; ++a) {
    m.row(a) = row[static_cast<std::size_t>(a)].eval(chart, x).transpose();
  }
  return m;
}

namespace {

// 2x2 minor of the 3x3 expression matrix m, deleting row i and column j.
Expr minor_expr(const std::array<std::array<Expr, 3>, 3>& m, int i, int j) {
  std::array<int, 2> rows{}, cols{};
  int r = 0, c = 0;
  for (int k = 0; k < 3; ++k) {
    if (k != i) rows[static_cast<std::size_t>(r++)] = k;
    if (k != j) cols[static_cast<std::size_t>(c++)] = k;
  }
  auto at = [&m](int a, int b) -> const Expr& {
    return m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  };
  return at(rows[0], cols[0]) * at(rows[1], cols[1]) -
         at(rows[0], cols[1]) * at(rows[1], cols[0]);
}

Expr det_expr(const std::array<std::array<Expr, 3>, 3>& m) {
  Expr det = Expr::constant(0.0);
  for (int j = 0; j < 3; ++j) {
    Expr term = m[0][static_cast<std::size_t>(j)] * minor_expr(m, 0, j);
    det = (j == 1) ? det - term : det + term;
  }
  return det;
}

}  // namespace

FrameField CoframeField::dual_frame() const {
  std::array<std::array<Expr, 3>, 3> m;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i)
      m[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] =
          row[static_cast<std::size_t>(a)].component[static_cast<std::size_t>(i)];
  const Expr det = det_expr(m);
  FrameField out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // inverse(i, j) = cofactor(j, i) / det
      Expr cof = minor_expr(m, j, i);
      if ((i + j) % 2 == 1) cof = -cof;
      out.entry[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cof / det;
    }
  }
  return out;
}

Eigen::RowVector3d covector_components(const OneForm& omega, const Frame& f, const Chart& chart) {
  return omega.eval(chart, f.base).transpose() * f.matrix;
}

Eigen::Vector3d vector_components(const VectorField& v, const Frame& f, const Chart& chart) {
  return f.matrix.partialPivLu().solve(v.eval(chart, f.base));
}

TwoForm exterior_derivative(const OneForm& omega) {
  const auto& names = Chart::coordinate_names();
  auto d = [&](int i, int j) {
    return omega.component[static_cast<std::size_t>(j)].diff(names[static_cast<std::size_t>(i)]) -
           omega.component[static_cast<std::size_t>(i)].diff(names[static_cast<std::size_t>(j)]);
  };
  return TwoForm{{d(0, 1), d(0, 2), d(1, 2)}};
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
  const auto& names = Chart::coordinate_names();
  VectorField out;
  for (int i = 0; i < 3; ++i) {
    Expr acc = Expr::constant(0.0);
    for (int j = 0; j < 3; ++j) {
      const auto& nj = names[static_cast<std::size_t>(j)];
      acc = acc +
            v.component[static_cast<std::size_t>(j)] *
                w.component[static_cast<std::size_t>(i)].diff(nj) -
            w.component[static_cast<std::size_t>(j)] *
                v.component[static_cast<std::size_t>(i)].diff(nj);
    }
    out.component[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

CoframeField dual_coframe(const FrameField& e, const Chart& chart) {
  for (int k = 0; k < chart.node_count(); ++k) {
    const double det = e.eval(chart, chart.node(k)).determinant();
    if (std::abs(det) <= kSingularTol) {
      throw FieldError("frame field singular at " + node_label(chart, k));
    }
  }
  const Expr det = det_expr(e.entry);
  CoframeField out;
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < 3; ++i) {
      Expr cof = minor_expr(e.entry, i, a);
      if ((a + i) % 2 == 1) cof = -cof;
      out.row[static_cast<std::size_t>(a)].component[static_cast<std::size_t>(i)] = cof / det;
    }
  }
  return out;
}

CoframeField adapted_coframe(const OneForm& omega, const Chart& chart) {
  // Nonvanishing check and per-component magnitude floors, in one sweep.
  Eigen::Vector3d floor = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
  for (int k = 0; k < chart.node_count(); ++k) {
    const Eigen::Vector3d w = omega.eval(chart, chart.node(k));
    if (w.lpNorm<Eigen::Infinity>() < 1e-8) {
      throw FieldError("one-form vanishes at " + node_label(chart, k));
    }
    floor = floor.cwiseMin(w.cwiseAbs());
  }

  int pivot = 0;
  for (int i = 1; i < 3; ++i) {
    if (floor(i) > floor(pivot)) pivot = i;
  }

  CoframeField out;
  out.row[0] = omega;
  int r = 1;
  for (int i = 0; i < 3; ++i) {
    if (i == pivot) continue;
    OneForm dx;
    for (int j = 0; j < 3; ++j)
      dx.component[static_cast<std::size_t>(j)] = Expr::constant(i == j ? 1.0 : 0.0);
    out.row[static_cast<std::size_t>(r++)] = dx;
  }

  for (int k = 0; k < chart.node_count(); ++k) {
    if (std::abs(out.eval(chart, chart.node(k)).determinant()) <= kSingularTol) {
      throw FieldError("adapted coframe singular at " + node_label(chart, k));
    }
  }
  return out;
}

}  // namespace gstr
