#include <cmath>
#include <limits>

#include "cg/ganlab.hpp"

namespace cg {

GanMetrics evaluate(const Matrix& samples, const MixtureSpec& spec, std::size_t threshold) {
  spec.validate();
  if (samples.rows() == 0) throw PreconditionError("evaluate: no samples");
  if (samples.cols() != 2) throw DimensionError("evaluate: samples must have two columns");

  GanMetrics m;
  m.per_mode_counts.assign(spec.centers.size(), 0);
  const double radius = 3.0 * spec.std;
  double dist_sum = 0.0;
  std::size_t high_quality = 0;
  for (std::size_t i = 0; i < samples.rows(); ++i) {
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < spec.centers.size(); ++k) {
      const double d = std::hypot(samples(i, 0) - spec.centers[k][0], samples(i, 1) - spec.centers[k][1]);
      if (d < best) {
        best = d;
        nearest = k;
      }
    }
    dist_sum += best;
    if (best <= radius) {
      ++m.per_mode_counts[nearest];
      ++high_quality;
    }
  }
  for (std::size_t c : m.per_mode_counts)
    if (c >= threshold) ++m.mode_coverage;
  const auto n = static_cast<double>(samples.rows());
  m.high_quality_fraction = static_cast<double>(high_quality) / n;
  m.mean_min_center_distance = dist_sum / n;
  return m;
}

}  // namespace cg
