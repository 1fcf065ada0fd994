#include <algorithm>
#include <cmath>
#include <numeric>

#include "cg/errors.hpp"
#include "cg/numkit.hpp"

namespace cg {
namespace {

constexpr int kMaxSweeps = 80;

// Gram–Schmidt (two passes) of column j of u against columns [0, j).
// Returns false if the candidate collapses.
bool orthonormalize_column(Matrix& u, std::size_t j) {
  const std::size_t m = u.rows();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < j; ++k) {
      double proj = 0.0;
      for (std::size_t i = 0; i < m; ++i) proj += u(i, k) * u(i, j);
      for (std::size_t i = 0; i < m; ++i) u(i, j) -= proj * u(i, k);
    }
  }
  double nrm = 0.0;
  for (std::size_t i = 0; i < m; ++i) nrm += u(i, j) * u(i, j);
  nrm = std::sqrt(nrm);
  if (nrm < 1e-8) return false;
  for (std::size_t i = 0; i < m; ++i) u(i, j) /= nrm;
  return true;
}

// Thin SVD of a tall (rows >= cols) matrix.
SvdResult svd_tall(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix w = a;
  Matrix v = Matrix::identity(n);

  bool rotated = true;
  int sweep = 0;
  for (; rotated && sweep < kMaxSweeps; ++sweep) {
    rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += w(i, p) * w(i, p);
          beta += w(i, q) * w(i, q);
          gamma += w(i, p) * w(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double wp = w(i, p);
          w(i, p) = c * wp - s * w(i, q);
          w(i, q) = s * wp + c * w(i, q);
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p);
          v(i, p) = c * vp - s * v(i, q);
          v(i, q) = s * vp + c * v(i, q);
        }
      }
    }
  }
  if (rotated) throw NumericalError("svd: one-sided Jacobi did not converge in " +
                                    std::to_string(kMaxSweeps) + " sweeps");

  Vector sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += w(i, j) * w(i, j);
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SvdResult r;
  r.u = Matrix(m, n);
  r.v = Matrix(n, n);
  r.d = Matrix(n, n);
  r.singular_values.resize(n);
  const double tol = n ? 1e-12 * sigma[order[0]] * static_cast<double>(std::max(m, n)) : 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    const double s = sigma[src];
    r.singular_values[j] = s;
    r.d(j, j) = s;
    for (std::size_t i = 0; i < n; ++i) r.v(i, j) = v(i, src);
    if (s > tol) {
      ++r.rank;
      for (std::size_t i = 0; i < m; ++i) r.u(i, j) = w(i, src) / s;
    } else {
      // Numerically null direction: complete the basis instead of normalising noise.
      bool ok = false;
      if (s > 0.0) {
        for (std::size_t i = 0; i < m; ++i) r.u(i, j) = w(i, src) / s;
        ok = orthonormalize_column(r.u, j);
      }
      for (std::size_t e = 0; !ok && e < m; ++e) {
        for (std::size_t i = 0; i < m; ++i) r.u(i, j) = (i == e) ? 1.0 : 0.0;
        ok = orthonormalize_column(r.u, j);
      }
    }
  }
  return r;
}

}  // namespace

SvdResult svd(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw DimensionError("svd of an empty matrix");
  if (!a.all_finite()) throw DomainError("svd: matrix has non-finite entries");
  if (a.rows() >= a.cols()) return svd_tall(a);
  // a = (aᵀ)ᵀ = (U D Vᵀ)ᵀ = V D Uᵀ
  SvdResult t = svd_tall(a.transpose());
  std::swap(t.u, t.v);
  return t;
}

}  // namespace cg
