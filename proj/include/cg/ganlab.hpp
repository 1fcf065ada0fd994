#pragma once

// Mixture-of-Gaussians GAN experiment: data, the neural game, training, metrics, timing.

#include <array>
#include <cstdint>
#include <random>

#include "cg/autograd.hpp"
#include "cg/optimizers.hpp"

namespace cg {

struct MixtureSpec {
  std::vector<std::array<double, 2>> centers;
  double std = 0.04;
  double radius = 2.0;

  /// `modes` centers equally spaced on a circle, the first at angle 0.
  static MixtureSpec ring(std::size_t modes = 8, double radius = 2.0, double std = 0.04);
  void validate() const;
};

/// Each row: a uniformly chosen center plus N(0, std²·I₂) noise.
Matrix sample_real(const MixtureSpec& spec, std::size_t n, std::mt19937_64& rng);
Matrix sample_real(const MixtureSpec& spec, std::size_t n, std::uint64_t seed);
/// n × dim standard normal draws.
Matrix sample_noise(std::size_t n, std::size_t dim, std::mt19937_64& rng);

/// The GAN value as a Game over (generator θ, discriminator φ) on the current batch.
///
/// grad_theta skips the real-data term, which does not depend on θ. The value
/// of V seen by the most recent evaluation that included the real term is kept
/// in last_value().
class GanGame final : public Game {
 public:
  explicit GanGame(GanNets nets);

  void set_batch(Matrix real, Matrix noise);
  const GanNets& nets() const { return nets_; }

  std::size_t theta_dim() const override { return theta_dim_; }
  std::size_t phi_dim() const override { return phi_dim_; }
  Vector grad_theta(const JointPoint& x) const override;
  Vector grad_phi(const JointPoint& x) const override;
  GradientPair grads(const JointPoint& x) const override;
  std::optional<double> value(const JointPoint& x) const override;

  std::optional<double> last_value() const { return last_value_; }

 private:
  void require_batch() const;

  GanNets nets_;
  std::size_t theta_dim_;
  std::size_t phi_dim_;
  Matrix real_;
  Matrix noise_;
  mutable std::optional<double> last_value_;
};

struct GanMetrics {
  std::size_t mode_coverage = 0;
  double high_quality_fraction = 0.0;
  std::vector<std::size_t> per_mode_counts;
  double mean_min_center_distance = 0.0;

  friend bool operator==(const GanMetrics&, const GanMetrics&) = default;
};

/// A sample is high quality within 3·std of its nearest center; a mode is
/// covered with at least `threshold` high-quality samples.
GanMetrics evaluate(const Matrix& samples, const MixtureSpec& spec, std::size_t threshold);

struct TrainConfig {
  GanNets nets;
  std::size_t noise_dim = 16;
  StepConfig optimizer;
  std::size_t batch_size = 256;
  std::size_t iterations = 4000;
  std::vector<std::size_t> checkpoint_steps{500, 1000, 2000, 4000};
  std::uint64_t seed = 17;
  std::size_t eval_samples = 2560;
  MixtureSpec mixture = MixtureSpec::ring();
  /// Defaults to eval_samples / 80.
  std::optional<std::size_t> coverage_threshold;

  std::size_t threshold() const { return coverage_threshold.value_or(eval_samples / 80); }
  void validate() const;

  /// Two hidden layers of `hidden` units in both nets, RMSProp-ACA with α = 5e-4, β = 0.5.
  static TrainConfig desk(std::size_t hidden = 64, std::size_t hidden_layers = 2);
};

struct SampleDump {
  std::size_t step = 0;
  Matrix samples;
  GanMetrics metrics;
};

struct TimingSummary {
  double mean_s = 0.0;
  double stddev_s = 0.0;
  std::size_t measured = 0;
};

/// Iterations excluded from timing statistics.
inline constexpr std::size_t kTimingWarmup = 50;

TimingSummary summarize_times(std::span<const double> step_times, std::size_t warmup = kTimingWarmup);

struct TrainResult {
  Vector losses;      ///< V at the discriminator's evaluation point, per iteration
  Vector step_times;  ///< seconds per optimizer step
  std::vector<SampleDump> checkpoints;
  TimingSummary timing;
  JointPoint final_params;
  bool failed = false;
  std::size_t failed_step = 0;
  std::string failure;
};

/// Real batches and noise come from one stream seeded by cfg.seed, independent of
/// the optimizer; both nets' initial weights and each checkpoint's evaluation noise
/// get their own derived seeds.
TrainResult train(const TrainConfig& cfg);

/// train() one iteration at a time, so several runs can be interleaved.
class Trainer {
 public:
  explicit Trainer(const TrainConfig& cfg);

  /// Runs the next iteration; false once finished or failed.
  bool step();
  bool done() const { return done_; }
  TrainResult finish();

 private:
  TrainConfig cfg_;
  GanGame game_;
  OptimizerState state_;
  std::mt19937_64 data_rng_;
  std::vector<std::size_t> checkpoints_;
  std::size_t next_checkpoint_ = 0;
  std::size_t t_ = 0;
  bool done_ = false;
  TrainResult result_;
};

/// eval_samples generator outputs from the evaluation noise of checkpoint `step`.
Matrix generate_samples(const TrainConfig& cfg, std::span<const double> theta, std::size_t step);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct TimingRow {
  std::string label;
  TimingSummary summary;
};

/// Runs every config for `iterations` steps without checkpoints and reports per-step timing.
std::vector<TimingRow> timing_compare(const std::vector<TrainConfig>& cfgs, std::size_t iterations);

std::string method_label(const StepConfig& cfg);

}  // namespace cg
