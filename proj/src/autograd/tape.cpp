#include <cmath>

#include "cg/autograd.hpp"
#include "cg/kernels.hpp"

namespace cg {
namespace {

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + " differ");
}

template <class F>
Matrix map(const Matrix& x, F f) {
  Matrix y(x.rows(), x.cols());
  auto src = x.data();
  auto dst = y.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = f(src[i]);
  return y;
}

}  // namespace

NodeId Tape::push(Op op, NodeId a, NodeId b, double s, Matrix value) {
  Node n;
  n.op = op;
  n.a = a;
  n.b = b;
  n.s = s;
  n.value = std::move(value);
  switch (op) {
    case Op::Leaf:
      break;
    case Op::MatMul:
    case Op::AddBias:
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
      n.requires_grad = nodes_[a].requires_grad || nodes_[b].requires_grad;
      break;
    default:
      n.requires_grad = nodes_[a].requires_grad;
  }
  nodes_.push_back(std::move(n));
  backward_done_ = false;
  return nodes_.size() - 1;
}

const Tape::Node& Tape::node(NodeId id) const {
  if (id >= nodes_.size()) throw DimensionError("tape node " + std::to_string(id) + " does not exist");
  return nodes_[id];
}

NodeId Tape::constant(Matrix value) { return push(Op::Leaf, 0, 0, 0.0, std::move(value)); }

NodeId Tape::parameter(Matrix value) {
  const NodeId id = push(Op::Leaf, 0, 0, 0.0, std::move(value));
  nodes_[id].requires_grad = true;
  return id;
}

NodeId Tape::matmul(NodeId x, NodeId w) {
  const Matrix& xv = node(x).value;
  const Matrix& wv = node(w).value;
  if (xv.cols() != wv.rows())
    throw DimensionError("matmul: inner dimensions " + std::to_string(xv.cols()) + " and " +
                         std::to_string(wv.rows()) + " differ");
  return push(Op::MatMul, x, w, 0.0, xv * wv);
}

NodeId Tape::add_bias(NodeId x, NodeId b) {
  const Matrix& xv = node(x).value;
  const Matrix& bv = node(b).value;
  if (bv.rows() != 1 || bv.cols() != xv.cols()) throw DimensionError("add_bias: bias must be 1 x cols(x)");
  Matrix y = xv;
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) y(i, j) += bv(0, j);
  return push(Op::AddBias, x, b, 0.0, std::move(y));
}

NodeId Tape::relu(NodeId x) {
  return push(Op::Relu, x, 0, 0.0, map(node(x).value, [](double v) { return v > 0.0 ? v : 0.0; }));
}

NodeId Tape::log_sigmoid(NodeId x) {
  return push(Op::LogSigmoid, x, 0, 0.0, map(node(x).value, [](double v) { return -softplus(-v); }));
}

NodeId Tape::log_one_minus_sigmoid(NodeId x) {
  return push(Op::Log1mSigmoid, x, 0, 0.0, map(node(x).value, [](double v) { return -softplus(v); }));
}

NodeId Tape::mean(NodeId x) {
  const Matrix& xv = node(x).value;
  if (xv.empty()) throw DimensionError("mean of an empty node");
  double s = 0.0;
  for (double v : xv.data()) s += v;
  return push(Op::Mean, x, 0, 0.0, Matrix(1, 1, s / static_cast<double>(xv.size())));
}

NodeId Tape::add(NodeId a, NodeId b) {
  require_same_shape(node(a).value, node(b).value, "add");
  return push(Op::Add, a, b, 0.0, node(a).value + node(b).value);
}

NodeId Tape::sub(NodeId a, NodeId b) {
  require_same_shape(node(a).value, node(b).value, "sub");
  return push(Op::Sub, a, b, 0.0, node(a).value - node(b).value);
}

NodeId Tape::scale(NodeId a, double s) { return push(Op::Scale, a, 0, s, s * node(a).value); }

NodeId Tape::mul(NodeId a, NodeId b) {
  const Matrix& av = node(a).value;
  const Matrix& bv = node(b).value;
  require_same_shape(av, bv, "mul");
  Matrix y(av.rows(), av.cols());
  for (std::size_t i = 0; i < y.size(); ++i) y.data()[i] = av.data()[i] * bv.data()[i];
  return push(Op::Mul, a, b, 0.0, std::move(y));
}

const Matrix& Tape::value(NodeId id) const { return node(id).value; }

bool Tape::requires_grad(NodeId id) const { return node(id).requires_grad; }

const Matrix& Tape::grad(NodeId id) const {
  if (!backward_done_) throw StateError("tape gradients read before a backward pass");
  return node(id).grad;
}

void Tape::accumulate(NodeId id, const Matrix& g) {
  Node& n = nodes_[id];
  if (!n.requires_grad) return;
  n.grad += g;
}

void Tape::propagate(const Node& n) {
  const Matrix& dy = n.grad;
  switch (n.op) {
    case Op::Leaf:
      return;
    case Op::MatMul: {
      const Matrix& x = nodes_[n.a].value;
      const Matrix& w = nodes_[n.b].value;
      if (nodes_[n.a].requires_grad) {
        Matrix dx(x.rows(), x.cols());
        kernels::matmul_a_bt(dy.data(), w.data(), dx.data(), dy.rows(), dy.cols(), w.rows());
        accumulate(n.a, dx);
      }
      if (nodes_[n.b].requires_grad) {
        Matrix dw(w.rows(), w.cols());
        kernels::matmul_at_b(x.data(), dy.data(), dw.data(), x.rows(), x.cols(), dy.cols());
        accumulate(n.b, dw);
      }
      return;
    }
    case Op::AddBias: {
      accumulate(n.a, dy);
      if (nodes_[n.b].requires_grad) {
        Matrix db(1, dy.cols());
        for (std::size_t i = 0; i < dy.rows(); ++i)
          for (std::size_t j = 0; j < dy.cols(); ++j) db(0, j) += dy(i, j);
        accumulate(n.b, db);
      }
      return;
    }
    case Op::Relu: {
      const Matrix& x = nodes_[n.a].value;
      Matrix dx(x.rows(), x.cols());
      for (std::size_t i = 0; i < dx.size(); ++i) dx.data()[i] = x.data()[i] > 0.0 ? dy.data()[i] : 0.0;
      accumulate(n.a, dx);
      return;
    }
    case Op::LogSigmoid: {
      const Matrix& x = nodes_[n.a].value;
      Matrix dx(x.rows(), x.cols());
      for (std::size_t i = 0; i < dx.size(); ++i) dx.data()[i] = dy.data()[i] * sigmoid(-x.data()[i]);
      accumulate(n.a, dx);
      return;
    }
    case Op::Log1mSigmoid: {
      const Matrix& x = nodes_[n.a].value;
      Matrix dx(x.rows(), x.cols());
      for (std::size_t i = 0; i < dx.size(); ++i) dx.data()[i] = -dy.data()[i] * sigmoid(x.data()[i]);
      accumulate(n.a, dx);
      return;
    }
    case Op::Mean: {
      const Matrix& x = nodes_[n.a].value;
      accumulate(n.a, Matrix(x.rows(), x.cols(), dy(0, 0) / static_cast<double>(x.size())));
      return;
    }
    case Op::Add:
      accumulate(n.a, dy);
      accumulate(n.b, dy);
      return;
    case Op::Sub:
      accumulate(n.a, dy);
      if (nodes_[n.b].requires_grad) accumulate(n.b, -1.0 * dy);
      return;
    case Op::Scale:
      if (nodes_[n.a].requires_grad) accumulate(n.a, n.s * dy);
      return;
    case Op::Mul: {
      const Matrix& av = nodes_[n.a].value;
      const Matrix& bv = nodes_[n.b].value;
      if (nodes_[n.a].requires_grad) {
        Matrix da(av.rows(), av.cols());
        for (std::size_t i = 0; i < da.size(); ++i) da.data()[i] = dy.data()[i] * bv.data()[i];
        accumulate(n.a, da);
      }
      if (nodes_[n.b].requires_grad) {
        Matrix db(bv.rows(), bv.cols());
        for (std::size_t i = 0; i < db.size(); ++i) db.data()[i] = dy.data()[i] * av.data()[i];
        accumulate(n.b, db);
      }
      return;
    }
  }
}

void Tape::backward(NodeId root) {
  const Node& r = node(root);
  if (r.value.rows() != 1 || r.value.cols() != 1) throw DimensionError("backward: root must be a 1x1 node");
  for (Node& n : nodes_) n.grad = Matrix(n.value.rows(), n.value.cols());
  backward_done_ = true;
  if (!r.requires_grad) return;
  nodes_[root].grad(0, 0) = 1.0;
  for (NodeId id = root + 1; id-- > 0;) {
    const Node& n = nodes_[id];
    if (n.requires_grad) propagate(n);
  }
}

}  // namespace cg
