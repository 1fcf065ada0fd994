#include <algorithm>
#include <chrono>
#include <cmath>

#include "cg/ganlab.hpp"

namespace cg {
namespace {

constexpr std::uint64_t kGenInitStream = 1;
constexpr std::uint64_t kDiscInitStream = 2;
constexpr std::uint64_t kEvalStreamBase = 1000;

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

void TrainConfig::validate() const {
  nets.gen.validate();
  nets.disc.validate();
  if (noise_dim == 0) throw ConfigError("noise_dim must be at least 1");
  if (nets.gen.input_dim != noise_dim) throw ConfigError("generator input_dim must equal noise_dim");
  if (nets.gen.output_dim() != 2 || nets.disc.input_dim != 2)
    throw ConfigError("generator output and discriminator input must be 2-D");
  if (nets.disc.output_dim() != 1) throw ConfigError("discriminator must have one output");
  optimizer.validate();
  switch (optimizer.method) {
    case Method::SimGD:
    case Method::AltGD:
    case Method::GradSCA:
    case Method::GradACA:
    case Method::OMD:
      break;
    default:
      throw ConfigError(std::string(to_string(optimizer.method)) +
                        " needs Jacobian products, which the neural game does not provide");
  }
  if (batch_size == 0) throw ConfigError("batch_size must be at least 1");
  if (eval_samples == 0) throw ConfigError("eval_samples must be at least 1");
  if (iterations == 0) throw ConfigError("iterations must be at least 1");
  for (std::size_t s : checkpoint_steps)
    if (s == 0 || s > iterations)
      throw ConfigError("checkpoint step " + std::to_string(s) + " is outside 1.." + std::to_string(iterations));
  mixture.validate();
}

TrainConfig TrainConfig::desk(std::size_t hidden, std::size_t hidden_layers) {
  TrainConfig cfg;
  std::vector<std::size_t> widths(hidden_layers, hidden);
  widths.push_back(2);
  cfg.nets.gen = {cfg.noise_dim, widths};
  widths.back() = 1;
  cfg.nets.disc = {2, widths};
  cfg.optimizer = StepConfig::symmetric(Method::GradACA, 5e-4, 0.5);
  cfg.optimizer.base = Base::RMSProp;
  return cfg;
}

std::string method_label(const StepConfig& cfg) {
  if (cfg.base != Base::RMSProp) return std::string(to_string(cfg.method));
  switch (cfg.method) {
    case Method::SimGD:
      return "RMSProp";
    case Method::AltGD:
      return "RMSProp-alt";
    case Method::GradSCA:
      return "RMSProp-SCA";
    case Method::GradACA:
      return "RMSProp-ACA";
    default:
      return "RMSProp-" + std::string(to_string(cfg.method));
  }
}

Matrix generate_samples(const TrainConfig& cfg, std::span<const double> theta, std::size_t step) {
  std::mt19937_64 rng(derive_seed(cfg.seed, kEvalStreamBase + step));
  const Matrix noise = sample_noise(cfg.eval_samples, cfg.noise_dim, rng);
  return forward_mlp(cfg.nets.gen, theta, noise).output;
}

TimingSummary summarize_times(std::span<const double> step_times, std::size_t warmup) {
  TimingSummary s;
  if (step_times.size() <= warmup) warmup = 0;
  const auto measured = step_times.subspan(warmup);
  s.measured = measured.size();
  if (measured.empty()) return s;
  double sum = 0.0;
  for (double t : measured) sum += t;
  s.mean_s = sum / static_cast<double>(measured.size());
  double var = 0.0;
  for (double t : measured) var += (t - s.mean_s) * (t - s.mean_s);
  s.stddev_s = measured.size() > 1 ? std::sqrt(var / static_cast<double>(measured.size() - 1)) : 0.0;
  return s;
}

Trainer::Trainer(const TrainConfig& cfg)
    : cfg_((cfg.validate(), cfg)),
      game_(cfg_.nets),
      state_(init_state(game_, JointPoint{init_params(cfg_.nets.gen, derive_seed(cfg_.seed, kGenInitStream)),
                                          init_params(cfg_.nets.disc, derive_seed(cfg_.seed, kDiscInitStream))})),
      data_rng_(cfg_.seed),
      checkpoints_(cfg_.checkpoint_steps) {
  std::sort(checkpoints_.begin(), checkpoints_.end());
  checkpoints_.erase(std::unique(checkpoints_.begin(), checkpoints_.end()), checkpoints_.end());
  result_.losses.reserve(cfg_.iterations);
  result_.step_times.reserve(cfg_.iterations);
}

bool Trainer::step() {
  if (done_) return false;
  const std::size_t t = ++t_;
  auto fail = [&](std::string why) {
    result_.failed = true;
    result_.failed_step = t;
    result_.failure = std::move(why);
    done_ = true;
    return false;
  };

  Matrix real = sample_real(cfg_.mixture, cfg_.batch_size, data_rng_);
  Matrix noise = sample_noise(cfg_.batch_size, cfg_.noise_dim, data_rng_);
  game_.set_batch(std::move(real), std::move(noise));

  const auto t0 = std::chrono::steady_clock::now();
  try {
    state_ = cg::step(game_, state_, cfg_.optimizer);
  } catch (const DivergenceError& e) {
    state_ = e.last_finite();
    return fail(e.what());
  } catch (const NumericalError& e) {
    return fail(e.what());
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  result_.step_times.push_back(dt.count());

  const double loss = game_.last_value().value_or(std::nan(""));
  result_.losses.push_back(loss);
  if (!std::isfinite(loss)) return fail("loss became non-finite");

  if (next_checkpoint_ < checkpoints_.size() && checkpoints_[next_checkpoint_] == t) {
    SampleDump dump;
    dump.step = t;
    dump.samples = generate_samples(cfg_, state_.current.theta, t);
    dump.metrics = evaluate(dump.samples, cfg_.mixture, cfg_.threshold());
    result_.checkpoints.push_back(std::move(dump));
    ++next_checkpoint_;
  }
  if (t == cfg_.iterations) done_ = true;
  return !done_;
}

TrainResult Trainer::finish() {
  result_.timing = summarize_times(result_.step_times);
  result_.final_params = state_.current;
  return std::move(result_);
}

TrainResult train(const TrainConfig& cfg) {
  Trainer trainer(cfg);
  while (trainer.step()) {
  }
  return trainer.finish();
}

}  // namespace cg
