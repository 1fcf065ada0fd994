#pragma once

// Seeded generators for property tests.

#include <cmath>
#include <random>

#include "cg/numkit.hpp"
#include "cg/optimizers.hpp"

namespace cg::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  Vector vector(std::size_t n, double lo = -1.0, double hi = 1.0) {
    Vector v(n);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }

  Matrix matrix(std::size_t r, std::size_t c, double lo = -1.0, double hi = 1.0) {
    Matrix m(r, c);
    for (double& x : m.data()) x = uniform(lo, hi);
    return m;
  }

  /// Sum of `rank` outer products; exactly rank-deficient when rank < min(r, c).
  Matrix low_rank(std::size_t r, std::size_t c, std::size_t rank) {
    Matrix m(r, c);
    for (std::size_t k = 0; k < rank; ++k) {
      const Vector u = vector(r), v = vector(c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) += u[i] * v[j];
    }
    return m;
  }

  /// Square matrix with singular values drawn from [lo, hi], via random rotations.
  Matrix well_conditioned(std::size_t n, double lo = 0.3, double hi = 1.0) {
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = uniform(lo, hi);
    return orthogonal(n) * d * orthogonal(n);
  }

  /// Gram-Schmidt on a random matrix.
  Matrix orthogonal(std::size_t n) {
    Matrix q = matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += q(i, j) * q(i, k);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, k);
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
      norm = std::sqrt(norm);
      for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
    }
    return q;
  }

  JointPoint point(std::size_t d, std::size_t p) { return {vector(d), vector(p)}; }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace cg::testing
