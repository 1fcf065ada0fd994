#include <cmath>

#include "cg/spectra.hpp"

namespace cg {
namespace {

constexpr std::size_t kCrossCheckMaxDim = 16;

bool symmetric(const StepConfig& cfg) { return cfg.alpha1 == cfg.alpha2 && cfg.beta1 == cfg.beta2; }

bool omd_parameters(const StepConfig& cfg) { return symmetric(cfg) && cfg.alpha1 == cfg.beta1; }

bool square_nonsingular(const Matrix& a, const SvdResult& s) { return a.square() && s.rank == a.rows(); }

double radius_or_zero(const std::vector<Complex>& eigs) { return eigs.empty() ? 0.0 : spectral_radius(eigs); }

Matrix leading_diagonal(const SvdResult& s) {
  return Matrix::diagonal(std::span<const double>(s.singular_values).first(s.rank));
}

}  // namespace

std::string_view to_string(SpectrumMethod m) {
  switch (m) {
    case SpectrumMethod::SCA:
      return "SCA";
    case SpectrumMethod::ACA:
      return "ACA";
    case SpectrumMethod::ACA_reduced:
      return "ACA_reduced";
  }
  return "unknown";
}

std::vector<Complex> sca_quartic_roots(double zeta, const StepConfig& cfg) {
  const double s1 = cfg.alpha1 + cfg.beta1, s2 = cfg.alpha2 + cfg.beta2;
  const double coeffs[] = {1.0, -2.0, 1.0 + zeta * s1 * s2, -zeta * (s2 * cfg.beta1 + cfg.beta2 * s1),
                           zeta * cfg.beta1 * cfg.beta2};
  return poly_roots(std::span<const double>(coeffs));
}

std::vector<Complex> aca_quadratic_roots(double zeta, double alpha) {
  const double c = 1.0 - alpha * alpha * zeta;
  const Complex disc = std::sqrt(Complex(c * c - c, 0.0));
  return {c + disc, c - disc};
}

SpectralReport sca_spectrum(const Matrix& a, const StepConfig& cfg) {
  const SvdResult s = svd(a);
  SpectralReport rep;
  rep.method = SpectrumMethod::SCA;
  rep.params = cfg;
  rep.singular_values = s.singular_values;

  std::vector<Complex> reduced;
  for (std::size_t i = 0; i < s.rank; ++i) {
    const double sigma = s.singular_values[i];
    for (const Complex& z : sca_quartic_roots(sigma * sigma, cfg)) reduced.push_back(z);
  }
  rep.rho_reduced = radius_or_zero(reduced);

  const bool nonsingular = square_nonsingular(a, s);
  if (nonsingular) {
    rep.eigenvalues = reduced;
    if (a.rows() + a.cols() <= kCrossCheckMaxDim)
      rep.cross_check = multiset_distance(rep.eigenvalues, eig_dense(build_f1(a, cfg)));
  } else {
    rep.eigenvalues = eig_dense(build_f1(a, cfg));
  }
  rep.rho = spectral_radius(rep.eigenvalues);

  if (symmetric(cfg) && s.rank > 0) {
    rep.region_ok = nonsingular ? region_check_prop32(a, cfg.alpha1, cfg.beta1)
                                : region_check_prop33(a, cfg.alpha1, cfg.beta1);
    if (omd_parameters(cfg) && cfg.alpha1 * s.singular_values[0] <= 1.0 + 1e-12)
      rep.bound = omd_rate_bound(a, cfg.alpha1);
  }
  return rep;
}

SpectralReport aca_spectrum(const Matrix& a, const StepConfig& cfg) {
  const SvdResult s = svd(a);
  SpectralReport rep;
  rep.method = SpectrumMethod::ACA;
  rep.params = cfg;
  rep.singular_values = s.singular_values;
  const bool nonsingular = square_nonsingular(a, s);

  if (!aca_special_case(cfg)) {
    rep.eigenvalues = eig_dense(build_f2(a, cfg));
    rep.rho = spectral_radius(rep.eigenvalues);
    rep.rho_reduced = s.rank == 0 ? 0.0 : spectral_radius(eig_dense(build_f2(leading_diagonal(s), cfg)));
    return rep;
  }

  const double alpha = cfg.alpha1;
  std::vector<Complex> reduced;
  for (std::size_t i = 0; i < s.rank; ++i) {
    const double sigma = s.singular_values[i];
    for (const Complex& z : aca_quadratic_roots(sigma * sigma, alpha)) reduced.push_back(z);
  }
  rep.rho_reduced = radius_or_zero(reduced);

  if (nonsingular) {
    rep.method = SpectrumMethod::ACA_reduced;
    rep.eigenvalues = reduced;
    const std::size_t n = a.rows() + a.cols();
    if (n <= kCrossCheckMaxDim) {
      // F₂ carries the reduced spectrum plus one zero per coordinate of the lagged state.
      std::vector<Complex> padded = reduced;
      padded.resize(2 * n, Complex(0.0, 0.0));
      rep.cross_check = multiset_distance(padded, eig_dense(build_f2(a, cfg)));
    }
  } else {
    rep.eigenvalues = eig_dense(build_f2(a, cfg));
  }
  rep.rho = spectral_radius(rep.eigenvalues);

  if (s.rank > 0) {
    const bool in_range = alpha * s.singular_values[0] <= 1.0 / std::sqrt(2.0) + 1e-12;
    rep.region_ok = in_range;
    if (in_range) rep.bound = aca_rate_bound(a, alpha);
  }
  return rep;
}

}  // namespace cg
