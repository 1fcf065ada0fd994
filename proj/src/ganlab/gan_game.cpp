#include "cg/ganlab.hpp"

namespace cg {

GanGame::GanGame(GanNets nets)
    : nets_(std::move(nets)), theta_dim_(nets_.gen.param_count()), phi_dim_(nets_.disc.param_count()) {
  nets_.gen.validate();
  nets_.disc.validate();
}

void GanGame::set_batch(Matrix real, Matrix noise) {
  if (real.cols() != nets_.disc.input_dim) throw DimensionError("GanGame: real batch has the wrong width");
  if (noise.cols() != nets_.gen.input_dim) throw DimensionError("GanGame: noise batch has the wrong width");
  real_ = std::move(real);
  noise_ = std::move(noise);
}

void GanGame::require_batch() const {
  if (noise_.empty() || real_.empty()) throw StateError("GanGame: set_batch must be called before evaluation");
}

Vector GanGame::grad_theta(const JointPoint& x) const {
  check_dims(x);
  require_batch();
  GanValue v = gan_value(nets_, x.theta, x.phi, real_, noise_, {true, false, false});
  return backward(v.tape, v.root, nets_.gen, v.gen);
}

Vector GanGame::grad_phi(const JointPoint& x) const {
  check_dims(x);
  require_batch();
  GanValue v = gan_value(nets_, x.theta, x.phi, real_, noise_, {false, true, true});
  last_value_ = v.value;
  return backward(v.tape, v.root, nets_.disc, v.disc);
}

GradientPair GanGame::grads(const JointPoint& x) const {
  check_dims(x);
  require_batch();
  GanValue v = gan_value(nets_, x.theta, x.phi, real_, noise_, {true, true, true});
  last_value_ = v.value;
  v.tape.backward(v.root);
  return {gather_grad(v.tape, nets_.gen, v.gen), gather_grad(v.tape, nets_.disc, v.disc)};
}

std::optional<double> GanGame::value(const JointPoint& x) const {
  check_dims(x);
  require_batch();
  return gan_value(nets_, x.theta, x.phi, real_, noise_, {false, false, true}).value;
}

}  // namespace cg
