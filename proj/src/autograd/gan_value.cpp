#include <cmath>

#include "cg/autograd.hpp"

namespace cg {
namespace {

void require_finite(const Tape& tape, NodeId id, const char* what) {
  if (!tape.value(id).all_finite())
    throw NumericalError(std::string("gan_value: non-finite ") + what + " activations");
}

}  // namespace

GanValue gan_value(const GanNets& nets, std::span<const double> theta, std::span<const double> phi,
                   const Matrix& real, const Matrix& noise, GanTapeOptions opts) {
  if (noise.rows() == 0 || (opts.include_real && real.rows() == 0))
    throw PreconditionError("gan_value: batches must be nonempty");
  if (nets.gen.output_dim() != nets.disc.input_dim)
    throw DimensionError("gan_value: generator output and discriminator input dims differ");
  if (nets.disc.output_dim() != 1) throw DimensionError("gan_value: discriminator must have one output");

  GanValue out;
  Tape& tape = out.tape;
  out.gen = add_mlp_leaves(tape, nets.gen, theta, opts.grad_gen);
  out.disc = add_mlp_leaves(tape, nets.disc, phi, opts.grad_disc);

  const NodeId fake = mlp_apply(tape, nets.gen, out.gen, tape.constant(noise));
  require_finite(tape, fake, "generator");
  const NodeId fake_logit = mlp_apply(tape, nets.disc, out.disc, fake);
  require_finite(tape, fake_logit, "discriminator (fake batch)");
  out.root = tape.mean(tape.log_one_minus_sigmoid(fake_logit));

  if (opts.include_real) {
    const NodeId real_logit = mlp_apply(tape, nets.disc, out.disc, tape.constant(real));
    require_finite(tape, real_logit, "discriminator (real batch)");
    out.root = tape.add(tape.mean(tape.log_sigmoid(real_logit)), out.root);
  }

  out.value = tape.value(out.root)(0, 0);
  if (!std::isfinite(out.value)) throw NumericalError("gan_value: value is not finite");
  return out;
}

}  // namespace cg
