#include <cmath>
#include <numbers>

#include "cg/ganlab.hpp"

namespace cg {

MixtureSpec MixtureSpec::ring(std::size_t modes, double radius, double std) {
  MixtureSpec spec;
  spec.radius = radius;
  spec.std = std;
  for (std::size_t k = 0; k < modes; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(modes);
    spec.centers.push_back({radius * std::cos(angle), radius * std::sin(angle)});
  }
  return spec;
}

void MixtureSpec::validate() const {
  if (centers.empty()) throw ConfigError("mixture needs at least one center");
  if (!(std > 0.0) || !std::isfinite(std)) throw ConfigError("mixture std must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("mixture radius must be positive");
}

Matrix sample_real(const MixtureSpec& spec, std::size_t n, std::mt19937_64& rng) {
  spec.validate();
  if (n == 0) throw PreconditionError("sample_real: n must be at least 1");
  std::uniform_int_distribution<std::size_t> pick(0, spec.centers.size() - 1);
  std::normal_distribution<double> noise(0.0, 1.0);
  Matrix out(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = spec.centers[pick(rng)];
    out(i, 0) = c[0] + spec.std * noise(rng);
    out(i, 1) = c[1] + spec.std * noise(rng);
  }
  return out;
}

Matrix sample_real(const MixtureSpec& spec, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_real(spec, n, rng);
}

Matrix sample_noise(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix out(n, dim);
  for (double& v : out.data()) v = dist(rng);
  return out;
}

}  // namespace cg
