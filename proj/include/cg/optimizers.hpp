#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cg/errors.hpp"
#include "cg/games.hpp"

namespace cg {

enum class Method { SimGD, AltGD, GradSCA, GradACA, OMD, PastExtrapolation, ConOpt, SGA };

/// Per-coordinate transform applied to the (adjusted) gradient before the update.
enum class Base { Identity, RMSProp };

std::string_view to_string(Method m);
std::string_view to_string(Base b);
Method parse_method(std::string_view name);
Base parse_base(std::string_view name);

/// Everything that determines one optimizer.
///
/// alpha1/beta1 drive the θ player, alpha2/beta2 the φ player. For the
/// centripetal methods the adjustment coefficient is beta/alpha. The RMSProp
/// fields only matter when base == Base::RMSProp.
struct StepConfig {
  Method method = Method::SimGD;
  Base base = Base::Identity;
  double alpha1 = 0.1;
  double alpha2 = 0.1;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double rms_decay = 0.9;
  double rms_epsilon = 1e-8;
  double conopt_gamma = 1.0;
  double sga_lambda = 1.0;
  bool sga_align = false;

  /// alpha1 = alpha2 = alpha, beta1 = beta2 = beta.
  static StepConfig symmetric(Method m, double alpha, double beta = 0.0);
  /// OMD with a single step size (all four constants equal).
  static StepConfig omd(double alpha);

  /// Throws ConfigError when the configuration is inconsistent.
  void validate() const;

  friend bool operator==(const StepConfig&, const StepConfig&) = default;
};

struct OptimizerState {
  JointPoint current;
  Vector prev_grad_theta;  ///< ∇_θV at the previous iterate
  Vector prev_grad_phi;    ///< ∇_φV at the previous φ-evaluation point
  Vector rms_cache_theta;
  Vector rms_cache_phi;
  std::size_t step_index = 0;
  JointPoint half_point;  ///< extrapolation-from-the-past only
};

/// Raised when an update produces non-finite values; carries the last finite state.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, OptimizerState last_finite)
      : Error(what), last_finite_(std::move(last_finite)) {}
  const OptimizerState& last_finite() const { return last_finite_; }

 private:
  OptimizerState last_finite_;
};

OptimizerState init_state(const Game& game, JointPoint start);

struct RmsPropStep {
  Vector step;
  Vector cache;
};

/// cache⁺ = γ·cache + (1−γ)·g², step = α·g / (√cache⁺ + ε), elementwise.
RmsPropStep rmsprop_transform(std::span<const double> grad, std::span<const double> cache,
                              double decay, double alpha, double epsilon);

OptimizerState grad_sca_step(const Game& game, const OptimizerState& state, const StepConfig& cfg);
OptimizerState grad_aca_step(const Game& game, const OptimizerState& state, const StepConfig& cfg);
OptimizerState omd_step(const Game& game, const OptimizerState& state, const StepConfig& cfg);
OptimizerState past_extrapolation_step(const Game& game, const OptimizerState& state, const StepConfig& cfg);
OptimizerState conopt_step(const Game& game, const OptimizerState& state, const StepConfig& cfg);
OptimizerState sga_step(const Game& game, const OptimizerState& state, const StepConfig& cfg);
/// Centripetal adjustment (or none) fed through the RMSProp transform.
OptimizerState composed_step(const Game& game, const OptimizerState& state, const StepConfig& cfg);

/// One update of whatever cfg describes.
OptimizerState step(const Game& game, const OptimizerState& state, const StepConfig& cfg);

/// Coordinates beyond this magnitude end a trajectory as diverged.
inline constexpr double kDivergenceGuard = 1e12;

struct Trajectory {
  std::vector<JointPoint> points;  ///< points[0] is the start
  Vector deltas;                   ///< squared distance of points[t] to the reference
  Vector grad_norms;               ///< ‖(∇_θV, ∇_φV)‖ at points[t]
  Vector step_times;               ///< seconds spent producing points[t] (0 for the start)
  bool diverged = false;

  std::size_t size() const { return points.size(); }
};

Trajectory run_trajectory(const Game& game, const StepConfig& cfg, const JointPoint& start,
                          std::size_t steps, const JointPoint& reference);

double squared_distance(const JointPoint& a, const JointPoint& b);

}  // namespace cg
