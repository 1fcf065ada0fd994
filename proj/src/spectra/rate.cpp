#include <cmath>

#include "cg/spectra.hpp"

namespace cg {

std::optional<double> empirical_rate(std::span<const double> deltas, std::size_t burn_in) {
  if (deltas.size() < burn_in + 20)
    throw PreconditionError("empirical_rate: need at least burn_in + 20 deltas, got " +
                            std::to_string(deltas.size()));
  const std::size_t n = deltas.size() - burn_in;
  double mean_t = 0.0, mean_y = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = deltas[burn_in + k];
    if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
    mean_t += static_cast<double>(k);
    mean_y += std::log(d);
  }
  mean_t /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dt = static_cast<double>(k) - mean_t;
    sxy += dt * (std::log(deltas[burn_in + k]) - mean_y);
    sxx += dt * dt;
  }
  return std::exp(sxy / sxx);
}

std::optional<double> empirical_rate(const Trajectory& traj, std::optional<std::size_t> burn_in) {
  if (traj.diverged) return std::nullopt;
  return empirical_rate(traj.deltas, burn_in.value_or(traj.deltas.size() / 5));
}

}  // namespace cg
