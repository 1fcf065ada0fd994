#include "cg/errors.hpp"
#include "cg/games.hpp"

namespace cg {

bool JointPoint::all_finite() const { return cg::all_finite(theta) && cg::all_finite(phi); }

GradientPair Game::grads(const JointPoint& x) const { return {grad_theta(x), grad_phi(x)}; }

JointPoint Game::jacobian_vector(const JointPoint&, const JointPoint&) const {
  throw CapabilityError("game does not provide Jacobian-vector products");
}

JointPoint Game::jacobian_transpose_vector(const JointPoint&, const JointPoint&) const {
  throw CapabilityError("game does not provide Jacobian-transpose-vector products");
}

JointPoint Game::simultaneous_field(const JointPoint& x) const {
  auto [gt, gp] = grads(x);
  for (double& v : gp) v = -v;
  return {std::move(gt), std::move(gp)};
}

JointPoint Game::jacobian_transpose_vf(const JointPoint& x) const {
  if (!has_jacobian())
    throw CapabilityError("game does not provide Jacobian products; ConOpt and SGA need them");
  return jacobian_transpose_vector(x, simultaneous_field(x));
}

void Game::check_dims(const JointPoint& x) const {
  if (x.theta.size() != theta_dim() || x.phi.size() != phi_dim())
    throw DimensionError("point has dims (" + std::to_string(x.theta.size()) + ", " +
                         std::to_string(x.phi.size()) + "), game expects (" +
                         std::to_string(theta_dim()) + ", " + std::to_string(phi_dim()) + ")");
}

}  // namespace cg
