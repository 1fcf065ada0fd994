#include <cmath>

#include "cg/spectra.hpp"

namespace cg {
namespace {

constexpr double kSlack = 1e-12;

struct Extremes {
  double sigma_max;
  double sigma_r;  // smallest nonzero singular value
};

Extremes singular_extremes(const Matrix& a, const char* who) {
  const SvdResult s = svd(a);
  if (s.rank == 0) throw PreconditionError(std::string(who) + ": A is zero");
  return {s.singular_values[0], s.singular_values[s.rank - 1]};
}

bool region(double alpha, double beta, const Extremes& e) {
  const double sum = alpha + beta;
  return sum > 0.0 && sum <= 1.0 / e.sigma_max + kSlack &&
         std::abs(alpha - beta) <= e.sigma_r * sum * sum / 10.0 + kSlack;
}

}  // namespace

bool region_check_prop32(const Matrix& a, double alpha, double beta) {
  if (!a.square()) throw PreconditionError("region_check_prop32: A must be square");
  const SvdResult s = svd(a);
  if (s.rank < a.rows()) throw PreconditionError("region_check_prop32: A is singular");
  return region(alpha, beta, {s.singular_values.front(), s.singular_values.back()});
}

bool region_check_prop33(const Matrix& a, double alpha, double beta) {
  return region(alpha, beta, singular_extremes(a, "region_check_prop33"));
}

double omd_rate_bound(const Matrix& a, double alpha) {
  const Extremes e = singular_extremes(a, "omd_rate_bound");
  if (!(alpha > 0.0) || alpha * e.sigma_max > 1.0 + kSlack)
    throw PreconditionError("omd_rate_bound: need 0 < alpha <= 1/sigma_1 = " + std::to_string(1.0 / e.sigma_max));
  const double inner = std::max(0.0, 1.0 - alpha * alpha * e.sigma_r * e.sigma_r);
  return std::sqrt(0.5 + 0.5 * std::sqrt(inner));
}

double aca_rate_bound(const Matrix& a, double alpha) {
  const Extremes e = singular_extremes(a, "aca_rate_bound");
  if (!(alpha > 0.0) || alpha * e.sigma_max > 1.0 / std::sqrt(2.0) + kSlack)
    throw PreconditionError("aca_rate_bound: need 0 < alpha <= 1/(sqrt(2) sigma_1) = " +
                            std::to_string(1.0 / (std::sqrt(2.0) * e.sigma_max)));
  const double x = alpha * alpha * e.sigma_r * e.sigma_r;
  return 1.0 - x + x * x;
}

}  // namespace cg
