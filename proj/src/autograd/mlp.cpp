#include <cmath>
#include <random>

#include "cg/autograd.hpp"

namespace cg {

std::size_t MlpSpec::param_count() const {
  std::size_t total = 0, in = input_dim;
  for (std::size_t out : layer_widths) {
    total += in * out + out;
    in = out;
  }
  return total;
}

void MlpSpec::validate() const {
  if (input_dim == 0) throw ConfigError("mlp: input_dim must be positive");
  if (layer_widths.empty()) throw ConfigError("mlp: at least one layer is required");
  for (std::size_t w : layer_widths)
    if (w == 0) throw ConfigError("mlp: layer widths must be positive");
}

std::vector<LayerSlice> param_layout(const MlpSpec& spec) {
  spec.validate();
  std::vector<LayerSlice> layout;
  std::size_t offset = 0, in = spec.input_dim;
  for (std::size_t out : spec.layer_widths) {
    LayerSlice s{in, out, offset, offset + in * out};
    offset = s.bias_offset + out;
    layout.push_back(s);
    in = out;
  }
  return layout;
}

ParamVector init_params(const MlpSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ParamVector params(spec.param_count(), 0.0);
  for (const LayerSlice& s : param_layout(spec)) {
    std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / static_cast<double>(s.in)));
    for (std::size_t k = 0; k < s.in * s.out; ++k) params[s.weight_offset + k] = dist(rng);
  }
  return params;
}

MlpLeaves add_mlp_leaves(Tape& tape, const MlpSpec& spec, std::span<const double> params, bool trainable) {
  if (params.size() != spec.param_count())
    throw DimensionError("mlp: expected " + std::to_string(spec.param_count()) + " parameters, got " +
                         std::to_string(params.size()));
  MlpLeaves leaves;
  for (const LayerSlice& s : param_layout(spec)) {
    Matrix w(s.in, s.out), b(1, s.out);
    std::copy_n(params.begin() + static_cast<std::ptrdiff_t>(s.weight_offset), s.in * s.out, w.data().begin());
    std::copy_n(params.begin() + static_cast<std::ptrdiff_t>(s.bias_offset), s.out, b.data().begin());
    leaves.weights.push_back(trainable ? tape.parameter(std::move(w)) : tape.constant(std::move(w)));
    leaves.biases.push_back(trainable ? tape.parameter(std::move(b)) : tape.constant(std::move(b)));
  }
  return leaves;
}

NodeId mlp_apply(Tape& tape, const MlpSpec& spec, const MlpLeaves& leaves, NodeId input) {
  if (tape.value(input).cols() != spec.input_dim)
    throw DimensionError("mlp: input has " + std::to_string(tape.value(input).cols()) + " columns, expected " +
                         std::to_string(spec.input_dim));
  NodeId h = input;
  const std::size_t layers = leaves.weights.size();
  for (std::size_t l = 0; l < layers; ++l) {
    h = tape.add_bias(tape.matmul(h, leaves.weights[l]), leaves.biases[l]);
    if (l + 1 < layers) h = tape.relu(h);
  }
  return h;
}

ParamVector gather_grad(const Tape& tape, const MlpSpec& spec, const MlpLeaves& leaves) {
  ParamVector g(spec.param_count(), 0.0);
  const auto layout = param_layout(spec);
  for (std::size_t l = 0; l < layout.size(); ++l) {
    const auto gw = tape.grad(leaves.weights[l]).data();
    const auto gb = tape.grad(leaves.biases[l]).data();
    std::copy(gw.begin(), gw.end(), g.begin() + static_cast<std::ptrdiff_t>(layout[l].weight_offset));
    std::copy(gb.begin(), gb.end(), g.begin() + static_cast<std::ptrdiff_t>(layout[l].bias_offset));
  }
  return g;
}

MlpForward forward_mlp(const MlpSpec& spec, std::span<const double> params, const Matrix& input) {
  MlpForward f;
  f.leaves = add_mlp_leaves(f.tape, spec, params, true);
  const NodeId x = f.tape.constant(input);
  f.output_node = mlp_apply(f.tape, spec, f.leaves, x);
  f.output = f.tape.value(f.output_node);
  return f;
}

Vector forward_mlp(const MlpSpec& spec, std::span<const double> params, std::span<const double> input) {
  const MlpForward f = forward_mlp(spec, params, Matrix::row(input));
  const auto row = f.output.row_span(0);
  return Vector(row.begin(), row.end());
}

ParamVector backward(Tape& tape, NodeId root, const MlpSpec& spec, const MlpLeaves& wrt) {
  tape.backward(root);
  return gather_grad(tape, spec, wrt);
}

}  // namespace cg
