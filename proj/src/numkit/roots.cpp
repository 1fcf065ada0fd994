#include <algorithm>
#include <cmath>
#include <numbers>

#include "cg/errors.hpp"
#include "cg/numkit.hpp"

namespace cg {
namespace {

constexpr int kMaxAberthIterations = 500;

// Value and derivative by Horner's rule.
std::pair<Complex, Complex> eval_with_derivative(std::span<const Complex> c, Complex z) {
  Complex p = c[0];
  Complex dp = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

// Roots of a monic polynomial with nonzero constant term.
std::vector<Complex> aberth(std::span<const Complex> monic) {
  const std::size_t n = monic.size() - 1;
  if (n == 1) return {-monic[1]};

  // Fujiwara bound on root moduli sets the starting circle.
  double radius = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double term = std::pow(std::abs(monic[k]), 1.0 / static_cast<double>(k));
    if (k == n) term = std::pow(std::abs(monic[k]) / 2.0, 1.0 / static_cast<double>(k));
    radius = std::max(radius, term);
  }
  radius = std::max(radius, 1e-3);

  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, angle);
  }

  for (int it = 0; it < kMaxAberthIterations; ++it) {
    double max_step = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto [p, dp] = eval_with_derivative(monic, z[k]);
      if (p == Complex(0.0)) continue;
      const Complex ratio = p / dp;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      const Complex step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[k])));
    }
    if (max_step < 1e-16) break;
  }
  return z;
}

}  // namespace

Complex poly_eval(std::span<const Complex> coeffs, Complex z) {
  Complex p = 0.0;
  for (const auto& c : coeffs) p = p * z + c;
  return p;
}

std::vector<Complex> poly_roots(std::span<const Complex> coeffs) {
  if (coeffs.empty()) throw DomainError("poly_roots: empty coefficient list");
  for (const auto& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw DomainError("poly_roots: non-finite coefficient");
  if (coeffs.front() == Complex(0.0))
    throw DomainError("poly_roots: degenerate polynomial (zero leading coefficient)");

  std::size_t last = coeffs.size();
  std::vector<Complex> roots;
  while (last > 1 && coeffs[last - 1] == Complex(0.0)) {
    roots.emplace_back(0.0, 0.0);
    --last;
  }
  if (last > 1) {
    std::vector<Complex> monic(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(last));
    const Complex lead = monic.front();
    for (auto& c : monic) c /= lead;
    const auto found = aberth(monic);
    roots.insert(roots.end(), found.begin(), found.end());
  }

  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  for (const auto& r : roots) {
    const double residual = std::abs(poly_eval(coeffs, r));
    if (!(residual <= 1e-9 * (1.0 + scale)))
      throw NumericalError("poly_roots: root " + std::to_string(r.real()) + "+" +
                           std::to_string(r.imag()) + "i has residual " + std::to_string(residual));
  }
  return roots;
}

std::vector<Complex> poly_roots(std::span<const double> coeffs) {
  std::vector<Complex> c(coeffs.begin(), coeffs.end());
  return poly_roots(std::span<const Complex>(c));
}

}  // namespace cg
