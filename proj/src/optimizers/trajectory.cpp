#include <chrono>
#include <cmath>

#include "cg/optimizers.hpp"

namespace cg {
namespace {

bool beyond_guard(const JointPoint& x) {
  for (double v : x.theta)
    if (std::abs(v) > kDivergenceGuard) return true;
  for (double v : x.phi)
    if (std::abs(v) > kDivergenceGuard) return true;
  return false;
}

double grad_norm(const Game& game, const JointPoint& x) {
  const GradientPair g = game.grads(x);
  return std::sqrt(squared_norm(g.theta) + squared_norm(g.phi));
}

}  // namespace

double squared_distance(const JointPoint& a, const JointPoint& b) {
  if (a.theta.size() != b.theta.size() || a.phi.size() != b.phi.size())
    throw DimensionError("squared_distance: points have different dims");
  double s = 0.0;
  for (std::size_t i = 0; i < a.theta.size(); ++i) s += (a.theta[i] - b.theta[i]) * (a.theta[i] - b.theta[i]);
  for (std::size_t j = 0; j < a.phi.size(); ++j) s += (a.phi[j] - b.phi[j]) * (a.phi[j] - b.phi[j]);
  return s;
}

Trajectory run_trajectory(const Game& game, const StepConfig& cfg, const JointPoint& start,
                          std::size_t steps, const JointPoint& reference) {
  cfg.validate();
  game.check_dims(start);
  game.check_dims(reference);

  Trajectory traj;
  traj.points.reserve(steps + 1);
  auto record = [&](const JointPoint& x, double seconds) {
    traj.points.push_back(x);
    traj.deltas.push_back(squared_distance(x, reference));
    traj.grad_norms.push_back(grad_norm(game, x));
    traj.step_times.push_back(seconds);
  };
  record(start, 0.0);

  OptimizerState state = init_state(game, start);
  for (std::size_t t = 0; t < steps; ++t) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      state = step(game, state, cfg);
    } catch (const DivergenceError&) {
      traj.diverged = true;
      break;
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    record(state.current, dt.count());
    if (beyond_guard(state.current)) {
      traj.diverged = true;
      break;
    }
  }
  return traj;
}

}  // namespace cg
