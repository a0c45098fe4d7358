////////////////////////////////////////////////////////////////////////////////
// rng.hpp
//
// Deterministic random numbers. mt19937_64 output is pinned by the standard,
// and the 53-bit mapping below avoids std::uniform_real_distribution (whose
// algorithm is implementation-defined), so fixed-seed runs produce
// bit-identical streams on every platform. Reports depend on this.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace gstr {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Uniform in [-halfwidth, halfwidth].
  double symmetric(double halfwidth) { return uniform(-halfwidth, halfwidth); }

  /// 3x3 matrix with entries uniform in [-halfwidth, halfwidth], row-major fill.
  Eigen::Matrix3d matrix(double halfwidth) {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = symmetric(halfwidth);
    return m;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace gstr
