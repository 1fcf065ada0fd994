#include <cmath>

#include "cg/optimizers.hpp"

namespace cg {
namespace {

void require_finite(std::span<const double> v, const char* what, const OptimizerState& last) {
  if (!all_finite(v))
    throw DivergenceError(std::string(what) + " became non-finite at step " +
                              std::to_string(last.step_index + 1),
                          last);
}

// g + coef·(g − prev)
Vector adjust(std::span<const double> g, std::span<const double> prev, double coef) {
  Vector out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i] + coef * (g[i] - prev[i]);
  return out;
}

// The displacement that replaces α·G in the update.
Vector base_step(const StepConfig& cfg, std::span<const double> adjusted, Vector& cache, double alpha) {
  if (cfg.base == Base::RMSProp) {
    RmsPropStep r = rmsprop_transform(adjusted, cache, cfg.rms_decay, alpha, cfg.rms_epsilon);
    cache = std::move(r.cache);
    return std::move(r.step);
  }
  Vector s(adjusted.begin(), adjusted.end());
  for (double& v : s) v *= alpha;
  return s;
}

void descend(Vector& x, std::span<const double> delta) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= delta[i];
}

void ascend(Vector& x, std::span<const double> delta) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += delta[i];
}

// Both players adjusted with gradients at (θ_t, φ_t).
OptimizerState simultaneous_update(const Game& game, const OptimizerState& state, const StepConfig& cfg,
                                   double coef_theta, double coef_phi) {
  game.check_dims(state.current);
  OptimizerState next = state;
  GradientPair g = game.grads(state.current);
  require_finite(g.theta, "gradient", state);
  require_finite(g.phi, "gradient", state);
  if (state.step_index == 0) {
    next.prev_grad_theta = g.theta;
    next.prev_grad_phi = g.phi;
  }
  const Vector adj_theta = adjust(g.theta, next.prev_grad_theta, coef_theta);
  const Vector adj_phi = adjust(g.phi, next.prev_grad_phi, coef_phi);
  descend(next.current.theta, base_step(cfg, adj_theta, next.rms_cache_theta, cfg.alpha1));
  ascend(next.current.phi, base_step(cfg, adj_phi, next.rms_cache_phi, cfg.alpha2));
  next.prev_grad_theta = std::move(g.theta);
  next.prev_grad_phi = std::move(g.phi);
  ++next.step_index;
  require_finite(next.current.theta, "iterate", state);
  require_finite(next.current.phi, "iterate", state);
  return next;
}

// θ moves first; φ's gradient is then taken at (θ_{t+1}, φ_t).
OptimizerState alternating_update(const Game& game, const OptimizerState& state, const StepConfig& cfg,
                                  double coef_theta, double coef_phi) {
  game.check_dims(state.current);
  OptimizerState next = state;
  Vector gt = game.grad_theta(state.current);
  require_finite(gt, "gradient", state);
  if (state.step_index == 0) next.prev_grad_theta = gt;
  const Vector adj_theta = adjust(gt, next.prev_grad_theta, coef_theta);
  descend(next.current.theta, base_step(cfg, adj_theta, next.rms_cache_theta, cfg.alpha1));
  require_finite(next.current.theta, "iterate", state);

  Vector gp = game.grad_phi(next.current);
  require_finite(gp, "gradient", state);
  if (state.step_index == 0) next.prev_grad_phi = gp;
  const Vector adj_phi = adjust(gp, next.prev_grad_phi, coef_phi);
  ascend(next.current.phi, base_step(cfg, adj_phi, next.rms_cache_phi, cfg.alpha2));
  require_finite(next.current.phi, "iterate", state);

  next.prev_grad_theta = std::move(gt);
  next.prev_grad_phi = std::move(gp);
  ++next.step_index;
  return next;
}

double sca_coef(double beta, double alpha) { return beta / alpha; }

void require_jacobian(const Game& game, Method m) {
  if (!game.has_jacobian())
    throw CapabilityError(std::string(to_string(m)) +
                          " needs Jacobian-vector products, which this game does not provide");
}

// w − α(ξ + adjustment), with α₁ on the θ block and α₂ on the φ block.
OptimizerState field_update(const OptimizerState& state, const StepConfig& cfg, const JointPoint& xi,
                            const JointPoint& adjustment, double weight) {
  OptimizerState next = state;
  for (std::size_t i = 0; i < xi.theta.size(); ++i)
    next.current.theta[i] -= cfg.alpha1 * (xi.theta[i] + weight * adjustment.theta[i]);
  for (std::size_t j = 0; j < xi.phi.size(); ++j)
    next.current.phi[j] -= cfg.alpha2 * (xi.phi[j] + weight * adjustment.phi[j]);
  ++next.step_index;
  require_finite(next.current.theta, "iterate", state);
  require_finite(next.current.phi, "iterate", state);
  return next;
}

}  // namespace

OptimizerState init_state(const Game& game, JointPoint start) {
  game.check_dims(start);
  OptimizerState s;
  s.rms_cache_theta.assign(start.theta.size(), 0.0);
  s.rms_cache_phi.assign(start.phi.size(), 0.0);
  s.half_point = start;
  s.current = std::move(start);
  return s;
}

RmsPropStep rmsprop_transform(std::span<const double> grad, std::span<const double> cache, double decay,
                              double alpha, double epsilon) {
  if (grad.size() != cache.size()) throw DimensionError("rmsprop: gradient and cache lengths differ");
  RmsPropStep r;
  r.step.resize(grad.size());
  r.cache.resize(grad.size());
  for (std::size_t i = 0; i < grad.size(); ++i) {
    r.cache[i] = decay * cache[i] + (1.0 - decay) * grad[i] * grad[i];
    r.step[i] = alpha * grad[i] / (std::sqrt(r.cache[i]) + epsilon);
  }
  return r;
}

OptimizerState grad_sca_step(const Game& game, const OptimizerState& state, const StepConfig& cfg) {
  cfg.validate();
  return simultaneous_update(game, state, cfg, sca_coef(cfg.beta1, cfg.alpha1), sca_coef(cfg.beta2, cfg.alpha2));
}

OptimizerState grad_aca_step(const Game& game, const OptimizerState& state, const StepConfig& cfg) {
  cfg.validate();
  return alternating_update(game, state, cfg, sca_coef(cfg.beta1, cfg.alpha1), sca_coef(cfg.beta2, cfg.alpha2));
}

OptimizerState omd_step(const Game& game, const OptimizerState& state, const StepConfig& cfg) {
  cfg.validate();
  if (cfg.base != Base::Identity) return composed_step(game, state, cfg);
  game.check_dims(state.current);
  const double alpha = cfg.alpha1;
  OptimizerState next = state;
  GradientPair g = game.grads(state.current);
  require_finite(g.theta, "gradient", state);
  require_finite(g.phi, "gradient", state);
  const Vector& pt = state.step_index == 0 ? g.theta : state.prev_grad_theta;
  const Vector& pp = state.step_index == 0 ? g.phi : state.prev_grad_phi;
  for (std::size_t i = 0; i < g.theta.size(); ++i)
    next.current.theta[i] = state.current.theta[i] - 2.0 * alpha * g.theta[i] + alpha * pt[i];
  for (std::size_t j = 0; j < g.phi.size(); ++j)
    next.current.phi[j] = state.current.phi[j] + 2.0 * alpha * g.phi[j] - alpha * pp[j];
  next.prev_grad_theta = std::move(g.theta);
  next.prev_grad_phi = std::move(g.phi);
  ++next.step_index;
  require_finite(next.current.theta, "iterate", state);
  require_finite(next.current.phi, "iterate", state);
  return next;
}

OptimizerState past_extrapolation_step(const Game& game, const OptimizerState& state, const StepConfig& cfg) {
  cfg.validate();
  game.check_dims(state.current);
  OptimizerState next = state;
  if (state.step_index == 0) {
    // Half point starts at the current point.
    next.half_point = state.current;
    GradientPair g0 = game.grads(state.current);
    next.prev_grad_theta = std::move(g0.theta);
    next.prev_grad_phi = std::move(g0.phi);
  }
  require_finite(next.prev_grad_theta, "gradient", state);
  require_finite(next.prev_grad_phi, "gradient", state);

  JointPoint half = state.current;
  for (std::size_t i = 0; i < half.theta.size(); ++i) half.theta[i] -= cfg.alpha1 * next.prev_grad_theta[i];
  for (std::size_t j = 0; j < half.phi.size(); ++j) half.phi[j] += cfg.alpha2 * next.prev_grad_phi[j];

  GradientPair gh = game.grads(half);
  require_finite(gh.theta, "gradient", state);
  require_finite(gh.phi, "gradient", state);
  for (std::size_t i = 0; i < gh.theta.size(); ++i) next.current.theta[i] -= cfg.alpha1 * gh.theta[i];
  for (std::size_t j = 0; j < gh.phi.size(); ++j) next.current.phi[j] += cfg.alpha2 * gh.phi[j];

  next.half_point = std::move(half);
  next.prev_grad_theta = std::move(gh.theta);
  next.prev_grad_phi = std::move(gh.phi);
  ++next.step_index;
  require_finite(next.current.theta, "iterate", state);
  require_finite(next.current.phi, "iterate", state);
  return next;
}

OptimizerState conopt_step(const Game& game, const OptimizerState& state, const StepConfig& cfg) {
  cfg.validate();
  require_jacobian(game, Method::ConOpt);
  game.check_dims(state.current);
  const JointPoint xi = game.simultaneous_field(state.current);
  require_finite(xi.theta, "gradient", state);
  require_finite(xi.phi, "gradient", state);
  const JointPoint jt_xi = game.jacobian_transpose_vector(state.current, xi);
  return field_update(state, cfg, xi, jt_xi, cfg.conopt_gamma);
}

OptimizerState sga_step(const Game& game, const OptimizerState& state, const StepConfig& cfg) {
  cfg.validate();
  require_jacobian(game, Method::SGA);
  game.check_dims(state.current);
  const JointPoint xi = game.simultaneous_field(state.current);
  require_finite(xi.theta, "gradient", state);
  require_finite(xi.phi, "gradient", state);
  const JointPoint j_xi = game.jacobian_vector(state.current, xi);
  const JointPoint jt_xi = game.jacobian_transpose_vector(state.current, xi);

  // Antisymmetric part A = (J − Jᵀ)/2, so Aᵀξ = (Jᵀξ − Jξ)/2.
  JointPoint at_xi = jt_xi;
  for (std::size_t i = 0; i < at_xi.theta.size(); ++i) at_xi.theta[i] = 0.5 * (jt_xi.theta[i] - j_xi.theta[i]);
  for (std::size_t j = 0; j < at_xi.phi.size(); ++j) at_xi.phi[j] = 0.5 * (jt_xi.phi[j] - j_xi.phi[j]);

  double lambda = cfg.sga_lambda;
  if (cfg.sga_align) {
    // ∇½‖ξ‖² = Jᵀξ. Pick λ's sign so the adjustment does not oppose descent on ½‖ξ‖².
    const double dim = static_cast<double>(xi.theta.size() + xi.phi.size());
    const double xi_h = dot(xi.theta, jt_xi.theta) + dot(xi.phi, jt_xi.phi);
    const double adj_h = dot(at_xi.theta, jt_xi.theta) + dot(at_xi.phi, jt_xi.phi);
    const double sign = (xi_h * adj_h / dim + 0.1) >= 0.0 ? 1.0 : -1.0;
    lambda = sign * std::abs(lambda);
  }
  return field_update(state, cfg, xi, at_xi, lambda);
}

OptimizerState composed_step(const Game& game, const OptimizerState& state, const StepConfig& cfg) {
  cfg.validate();
  if (cfg.base == Base::Identity) return step(game, state, cfg);
  switch (cfg.method) {
    case Method::SimGD:
      return simultaneous_update(game, state, cfg, 0.0, 0.0);
    case Method::GradSCA:
      return simultaneous_update(game, state, cfg, sca_coef(cfg.beta1, cfg.alpha1), sca_coef(cfg.beta2, cfg.alpha2));
    case Method::OMD:
      return simultaneous_update(game, state, cfg, 1.0, 1.0);
    case Method::AltGD:
      return alternating_update(game, state, cfg, 0.0, 0.0);
    case Method::GradACA:
      return alternating_update(game, state, cfg, sca_coef(cfg.beta1, cfg.alpha1), sca_coef(cfg.beta2, cfg.alpha2));
    default:
      throw ConfigError("base transform rmsprop is not supported with method " +
                        std::string(to_string(cfg.method)));
  }
}

OptimizerState step(const Game& game, const OptimizerState& state, const StepConfig& cfg) {
  cfg.validate();
  if (cfg.base != Base::Identity) return composed_step(game, state, cfg);
  switch (cfg.method) {
    case Method::SimGD:
      return simultaneous_update(game, state, cfg, 0.0, 0.0);
    case Method::AltGD:
      return alternating_update(game, state, cfg, 0.0, 0.0);
    case Method::GradSCA:
      return grad_sca_step(game, state, cfg);
    case Method::GradACA:
      return grad_aca_step(game, state, cfg);
    case Method::OMD:
      return omd_step(game, state, cfg);
    case Method::PastExtrapolation:
      return past_extrapolation_step(game, state, cfg);
    case Method::ConOpt:
      return conopt_step(game, state, cfg);
    case Method::SGA:
      return sga_step(game, state, cfg);
  }
  throw ConfigError("unhandled method");
}

}  // namespace cg
