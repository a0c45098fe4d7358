#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "gstr/liealg.hpp"
#include "gstr/rng.hpp"

using gstr::AlgebraElement;
using gstr::GroupElement;
using gstr::Representation;
using gstr::Rng;
using gstr::SubalgebraBasis;

namespace {

Eigen::VectorXd covector(double a, double b, double c) {
  Eigen::VectorXd u(3);
  u << a, b, c;
  return u;
}

Eigen::VectorXd random_value(Rng& rng, const Representation& rep) {
  Eigen::VectorXd u(rep.dim());
  for (int i = 0; i < u.size(); ++i) u(i) = rng.symmetric(1.0);
  return u;
}

GroupElement random_invertible(Rng& rng) { return gstr::exp_matrix(rng.matrix(0.6)); }

std::vector<Representation> all_reps() {
  return {Representation::vector(), Representation::covector(), Representation::bilinear_form(),
          Representation::tensor(2, 0), Representation::tensor(1, 1)};
}

// Analytic basis of matrices with vanishing first row (Eq.-style candidates).
SubalgebraBasis first_row_zero_basis() {
  SubalgebraBasis b;
  for (int i = 1; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
      m(i, j) = 1.0;
      b.elements.push_back(m);
    }
  }
  return b;
}

SubalgebraBasis sl3_basis() {
  SubalgebraBasis b;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
      m(i, j) = 1.0;
      b.elements.push_back(m);
    }
  }
  Eigen::Matrix3d d1 = Eigen::Matrix3d::Zero();
  d1(0, 0) = 1.0 / std::sqrt(2.0);
  d1(1, 1) = -1.0 / std::sqrt(2.0);
  b.elements.push_back(d1);
  Eigen::Matrix3d d2 = Eigen::Matrix3d::Zero();
  d2(0, 0) = 1.0 / std::sqrt(6.0);
  d2(1, 1) = 1.0 / std::sqrt(6.0);
  d2(2, 2) = -2.0 / std::sqrt(6.0);
  b.elements.push_back(d2);
  return b;
}

}  // namespace

TEST_CASE("group action basics") {
  const Representation cov = Representation::covector();
  const Eigen::VectorXd u = covector(1, 0, 0);

  CHECK((gstr::act(GroupElement::Identity(), u, cov) - u).norm() == doctest::Approx(0.0));

  GroupElement g = Eigen::Vector3d(2, 1, 1).asDiagonal();
  const Eigen::VectorXd w = gstr::act(g, u, cov);
  CHECK(w(0) == doctest::Approx(0.5));
  CHECK(w(1) == doctest::Approx(0.0));
  CHECK(w(2) == doctest::Approx(0.0));

  CHECK_THROWS(gstr::act(GroupElement::Zero(), u, cov));
}

TEST_CASE("action is a homomorphism for every representation") {
  Rng rng(11);
  for (const auto& rep : all_reps()) {
    for (int trial = 0; trial < 20; ++trial) {
      const GroupElement g1 = random_invertible(rng);
      const GroupElement g2 = random_invertible(rng);
      const Eigen::VectorXd u = random_value(rng, rep);
      const Eigen::VectorXd lhs = gstr::act(g1 * g2, u, rep);
      const Eigen::VectorXd rhs = gstr::act(g1, gstr::act(g2, u, rep), rep);
      CHECK((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }
  }
}

TEST_CASE("algebra action is the derivative of the group action") {
  Rng rng(12);
  const double t = 1e-6;
  for (const auto& rep : all_reps()) {
    for (int trial = 0; trial < 10; ++trial) {
      const AlgebraElement a = rng.matrix(1.0);
      const Eigen::VectorXd u = random_value(rng, rep);
      const Eigen::VectorXd fd =
          (gstr::act(gstr::exp_matrix(t * a), u, rep) - u) / t;
      const Eigen::VectorXd lin = gstr::algebra_act(a, u, rep);
      CHECK((fd - lin).norm() <= 1e-5 * (1.0 + lin.norm()));
    }
  }

  // Stated example: covector <1,0,0> against E12 gives <0,-1,0>.
  Eigen::Matrix3d e12 = Eigen::Matrix3d::Zero();
  e12(0, 1) = 1.0;
  const Eigen::VectorXd out = gstr::algebra_act(e12, covector(1, 0, 0), Representation::covector());
  CHECK(out(0) == doctest::Approx(0.0));
  CHECK(out(1) == doctest::Approx(-1.0));
  CHECK(out(2) == doctest::Approx(0.0));

  const Eigen::VectorXd zero =
      gstr::algebra_act(AlgebraElement::Zero(), covector(1, 0, 0), Representation::covector());
  CHECK(zero.norm() == doctest::Approx(0.0));
}

TEST_CASE("isotropy algebra of the layering covector") {
  const Representation cov = Representation::covector();
  const Eigen::VectorXd u = covector(1, 0, 0);

  const SubalgebraBasis basis = gstr::isotropy_algebra(u, cov);
  REQUIRE(basis.dim() == 6);
  for (const auto& m : basis.elements) {
    CHECK(m.row(0).norm() <= 1e-12);
  }
  const auto cmp = gstr::subalgebra_equal(basis, first_row_zero_basis(), 1e-8);
  CHECK(cmp.equal);
  CHECK(cmp.max_principal_angle <= 1e-8);

  const SubalgebraBasis uni = gstr::isotropy_algebra(u, cov, /*unimodular=*/true);
  REQUIRE(uni.dim() == 5);
  for (const auto& m : uni.elements) {
    CHECK(m.row(0).norm() <= 1e-12);
    CHECK(std::abs(m.trace()) <= 1e-12);
  }

  const SubalgebraBasis everything = gstr::isotropy_algebra(covector(0, 0, 0), cov);
  CHECK(everything.dim() == 9);
  const SubalgebraBasis everything_uni =
      gstr::isotropy_algebra(covector(0, 0, 0), cov, /*unimodular=*/true);
  CHECK(everything_uni.dim() == 8);
}

TEST_CASE("orbit dimensions complement the stabilizers") {
  const Representation cov = Representation::covector();
  CHECK(gstr::orbit_tangent_dim(covector(1, 0, 0), cov) == 3);
  CHECK(gstr::orbit_tangent_dim(covector(0, 0, 0), cov) == 0);

  const Representation bil = Representation::bilinear_form();
  const Eigen::VectorXd id9 = bil.from_matrix(Eigen::Matrix3d::Identity());
  CHECK(gstr::orbit_tangent_dim(id9, bil) == 6);  // stabilizer = orthogonal algebra
  const SubalgebraBasis orth = gstr::isotropy_algebra(id9, bil);
  CHECK(orth.dim() == 3);
  for (const auto& m : orth.elements) {
    CHECK((m + m.transpose()).norm() <= 1e-9);  // skew
  }

  Rng rng(13);
  for (const auto& rep : all_reps()) {
    for (int trial = 0; trial < 5; ++trial) {
      const Eigen::VectorXd u = random_value(rng, rep);
      CHECK(gstr::isotropy_algebra(u, rep).dim() + gstr::orbit_tangent_dim(u, rep) == 9);
    }
  }
}

TEST_CASE("matrix exponential") {
  CHECK((gstr::exp_matrix(AlgebraElement::Zero()) - GroupElement::Identity()).norm() ==
        doctest::Approx(0.0));

  AlgebraElement d = AlgebraElement::Zero();
  d(0, 0) = 1.0;
  const GroupElement e = gstr::exp_matrix(d);
  CHECK(e(0, 0) == doctest::Approx(std::exp(1.0)));
  CHECK(e(1, 1) == doctest::Approx(1.0));
  CHECK(e(2, 2) == doctest::Approx(1.0));

  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const AlgebraElement a = rng.matrix(1.2);
    CHECK(gstr::exp_matrix(a).determinant() ==
          doctest::Approx(std::exp(a.trace())).epsilon(1e-9));
  }
}

TEST_CASE("subalgebra comparison by principal angles") {
  const SubalgebraBasis b = gstr::isotropy_algebra(covector(1, 0, 0), Representation::covector());

  CHECK(gstr::subalgebra_equal(b, b).equal);

  SubalgebraBasis permuted = b;
  std::swap(permuted.elements[0], permuted.elements[3]);
  std::swap(permuted.elements[1], permuted.elements[5]);
  CHECK(gstr::subalgebra_equal(b, permuted).equal);

  const SubalgebraBasis frz_tz =
      gstr::isotropy_algebra(covector(1, 0, 0), Representation::covector(), true);
  const auto cmp = gstr::subalgebra_equal(frz_tz, sl3_basis());
  CHECK_FALSE(cmp.equal);
  CHECK(cmp.dim_a == 5);
  CHECK(cmp.dim_b == 8);
}

TEST_CASE("random group elements from a subalgebra") {
  SubalgebraBasis empty;
  CHECK((gstr::random_group_element(empty, 0.5, 1) - GroupElement::Identity()).norm() ==
        doctest::Approx(0.0));

  const SubalgebraBasis frz = gstr::isotropy_algebra(covector(1, 0, 0), Representation::covector());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GroupElement g = gstr::random_group_element(frz, 0.7, seed);
    CHECK(std::abs(g(0, 0) - 1.0) <= 1e-9);
    CHECK(std::abs(g(0, 1)) <= 1e-9);
    CHECK(std::abs(g(0, 2)) <= 1e-9);
  }

  const SubalgebraBasis uni =
      gstr::isotropy_algebra(covector(1, 0, 0), Representation::covector(), true);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GroupElement g = gstr::random_group_element(uni, 0.7, seed);
    CHECK(std::abs(g.determinant() - 1.0) <= 1e-9);
  }

  // Determinism per seed.
  const GroupElement a = gstr::random_group_element(uni, 0.7, 42);
  const GroupElement b = gstr::random_group_element(uni, 0.7, 42);
  CHECK((a - b).norm() == 0.0);
}

TEST_CASE("returned stabilizers really stabilize and close under bracket") {
  Rng rng(15);
  for (const auto& rep : all_reps()) {
    const Eigen::VectorXd u = random_value(rng, rep);
    const SubalgebraBasis basis = gstr::isotropy_algebra(u, rep);

    for (const auto& a : basis.elements) {
      CHECK(gstr::algebra_act(a, u, rep).norm() <= 1e-8 * (1.0 + u.norm()));
    }

    for (const auto& a : basis.elements) {
      for (const auto& b : basis.elements) {
        const Eigen::Matrix3d bracket = a * b - b * a;
        CHECK(basis.projection_residual(bracket) <= 1e-8);
      }
    }

    for (int trial = 0; trial < 20 && basis.dim() > 0; ++trial) {
      const GroupElement g = gstr::random_group_element(basis, 0.5, static_cast<std::uint64_t>(trial));
      CHECK((gstr::act(g, u, rep) - u).norm() <= 1e-7 * (1.0 + u.norm()));
    }
  }
}
