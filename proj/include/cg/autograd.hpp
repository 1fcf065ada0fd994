#pragma once

// Reverse-mode differentiation over batch matrices, fully connected nets and the GAN value.

#include <cstdint>
#include <filesystem>
#include <optional>

#include "cg/errors.hpp"
#include "cg/numkit.hpp"

namespace cg {

using NodeId = std::size_t;

/// Append-only computation record. Every node holds a matrix value; scalars are 1×1.
///
/// Leaves are either constants or parameters. Only nodes that depend on a
/// parameter get adjoints, so products feeding constants are skipped in the
/// backward pass.
class Tape {
 public:
  NodeId constant(Matrix value);
  NodeId parameter(Matrix value);

  NodeId matmul(NodeId x, NodeId w);
  /// x (n×m) plus a 1×m row broadcast over rows.
  NodeId add_bias(NodeId x, NodeId b);
  NodeId relu(NodeId x);
  /// log σ(x) = −softplus(−x)
  NodeId log_sigmoid(NodeId x);
  /// log(1 − σ(x)) = −softplus(x)
  NodeId log_one_minus_sigmoid(NodeId x);
  /// Mean of all entries, as a 1×1 node.
  NodeId mean(NodeId x);
  NodeId add(NodeId a, NodeId b);
  NodeId sub(NodeId a, NodeId b);
  NodeId scale(NodeId a, double s);
  /// Elementwise product.
  NodeId mul(NodeId a, NodeId b);

  const Matrix& value(NodeId id) const;
  bool requires_grad(NodeId id) const;
  std::size_t size() const { return nodes_.size(); }

  /// Fills adjoints of every node reachable from root, which must be 1×1.
  void backward(NodeId root);
  /// Adjoint of a node from the last backward pass; zero if root does not depend on it.
  const Matrix& grad(NodeId id) const;

 private:
  enum class Op { Leaf, MatMul, AddBias, Relu, LogSigmoid, Log1mSigmoid, Mean, Add, Sub, Scale, Mul };

  struct Node {
    Op op = Op::Leaf;
    NodeId a = 0;
    NodeId b = 0;
    double s = 0.0;
    bool requires_grad = false;
    Matrix value;
    Matrix grad;
  };

  NodeId push(Op op, NodeId a, NodeId b, double s, Matrix value);
  const Node& node(NodeId id) const;
  void accumulate(NodeId id, const Matrix& g);
  void propagate(const Node& n);

  std::vector<Node> nodes_;
  bool backward_done_ = false;
};

/// Fully connected net: affine layers with ReLU between them and a linear output.
/// layer_widths lists every layer's output width; the last entry is the output dimension.
struct MlpSpec {
  std::size_t input_dim = 0;
  std::vector<std::size_t> layer_widths;

  std::size_t output_dim() const { return layer_widths.empty() ? 0 : layer_widths.back(); }
  std::size_t param_count() const;
  void validate() const;

  friend bool operator==(const MlpSpec&, const MlpSpec&) = default;
};

/// Flat parameters: per layer, W (in×out, row-major) followed by b (out).
using ParamVector = Vector;

struct LayerSlice {
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t weight_offset = 0;
  std::size_t bias_offset = 0;
};

std::vector<LayerSlice> param_layout(const MlpSpec& spec);

/// He initialization: W ~ N(0, 2/fan_in), b = 0.
ParamVector init_params(const MlpSpec& spec, std::uint64_t seed);

struct MlpLeaves {
  std::vector<NodeId> weights;
  std::vector<NodeId> biases;
};

MlpLeaves add_mlp_leaves(Tape& tape, const MlpSpec& spec, std::span<const double> params, bool trainable);
NodeId mlp_apply(Tape& tape, const MlpSpec& spec, const MlpLeaves& leaves, NodeId input);
/// Adjoints of the leaves laid out like the parameter vector.
ParamVector gather_grad(const Tape& tape, const MlpSpec& spec, const MlpLeaves& leaves);

struct MlpForward {
  Matrix output;
  Tape tape;
  NodeId output_node = 0;
  MlpLeaves leaves;
};

/// Batch forward pass; input is batch × input_dim.
MlpForward forward_mlp(const MlpSpec& spec, std::span<const double> params, const Matrix& input);
/// Single-sample forward pass.
Vector forward_mlp(const MlpSpec& spec, std::span<const double> params, std::span<const double> input);

/// Gradient of a scalar node with respect to one net's parameters.
ParamVector backward(Tape& tape, NodeId root, const MlpSpec& spec, const MlpLeaves& wrt);

struct GanValue {
  double value = 0.0;
  Tape tape;
  NodeId root = 0;
  MlpLeaves gen;
  MlpLeaves disc;
};

struct GanNets {
  MlpSpec gen;
  MlpSpec disc;

  friend bool operator==(const GanNets&, const GanNets&) = default;
};

/// Which players the tape should differentiate, and whether the real-data term is built.
struct GanTapeOptions {
  bool grad_gen = true;
  bool grad_disc = true;
  bool include_real = true;
};

/// V = mean log σ(D(x)) + mean log(1 − σ(D(G(z)))), D returning a logit.
/// With include_real = false only the fake-data term is recorded.
GanValue gan_value(const GanNets& nets, std::span<const double> theta, std::span<const double> phi,
                   const Matrix& real, const Matrix& noise, GanTapeOptions opts = {});

struct Checkpoint {
  MlpSpec spec;
  std::uint64_t seed = 0;
  std::size_t step = 0;
  ParamVector params;
};

/// JSON header line {spec, seed, step, count}, then count little-endian float64 values.
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace cg
