#include <cmath>

#include "cg/errors.hpp"
#include "cg/games.hpp"

namespace cg {
namespace {

void validate(const BilinearGame& g) {
  if (g.b.size() != g.a.rows() || g.c.size() != g.a.cols())
    throw DimensionError("bilinear game: A is " + std::to_string(g.a.rows()) + "x" +
                         std::to_string(g.a.cols()) + " but b has " + std::to_string(g.b.size()) +
                         " and c has " + std::to_string(g.c.size()) + " entries");
  if (!g.a.all_finite() || !all_finite(g.b) || !all_finite(g.c))
    throw DomainError("bilinear game has non-finite entries");
}

// Leading r columns of an SVD factor.
Matrix leading_columns(const Matrix& m, std::size_t r) { return m.block(0, 0, m.rows(), r); }

// x - Q Qᵀ x for Q with orthonormal columns.
Vector project_out(const Matrix& q, std::span<const double> x) {
  const Vector coeffs = transpose_times(q, x);
  const Vector range = q * coeffs;
  return subtract(x, range);
}

}  // namespace

BilinearGame::BilinearGame(Matrix a_, Vector b_, Vector c_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
  validate(*this);
}

BilinearGame::BilinearGame(Matrix a_) : a(std::move(a_)), b(a.rows(), 0.0), c(a.cols(), 0.0) {
  validate(*this);
}

bool BilinearGame::centered() const {
  for (double v : b)
    if (v != 0.0) return false;
  for (double v : c)
    if (v != 0.0) return false;
  return true;
}

BilinearGame scalar_game() { return BilinearGame(Matrix{{1.0}}); }

GradientPair bilinear_grads(const BilinearGame& g, const JointPoint& x) {
  if (x.theta.size() != g.d() || x.phi.size() != g.p())
    throw DimensionError("bilinear_grads: point dims do not match A");
  Vector gt = g.a * x.phi;
  for (std::size_t i = 0; i < gt.size(); ++i) gt[i] += g.b[i];
  Vector gp = transpose_times(g.a, x.theta);
  for (std::size_t j = 0; j < gp.size(); ++j) gp[j] += g.c[j];
  return {std::move(gt), std::move(gp)};
}

Stationarity stationarity(const BilinearGame& g) {
  const SvdResult s = svd(g.a);
  const std::size_t r = s.rank;
  const Matrix ur = leading_columns(s.u, r);
  const Matrix vr = leading_columns(s.v, r);

  // Minimum-norm least squares: φ* = -A⁺b, θ* = -(Aᵀ)⁺c.
  Vector ub = transpose_times(ur, g.b);
  Vector vc = transpose_times(vr, g.c);
  for (std::size_t i = 0; i < r; ++i) {
    ub[i] /= -s.singular_values[i];
    vc[i] /= -s.singular_values[i];
  }
  JointPoint point{ur * vc, vr * ub};

  const auto [rt, rp] = bilinear_grads(g, point);
  const double tol = 1e-9 * (1.0 + norm2(g.b) + norm2(g.c));
  Stationarity out;
  out.exists = norm2(rt) <= tol && norm2(rp) <= tol;
  if (out.exists) out.point = std::move(point);
  return out;
}

BilinearGame shift_to_origin(const BilinearGame& g) {
  if (!stationarity(g).exists)
    throw UnsupportedGameError("bilinear game has no stationary point (b or c outside the range of A)");
  return BilinearGame(g.a);
}

std::pair<Vector, Vector> null_projections(const BilinearGame& g, const JointPoint& x) {
  if (x.theta.size() != g.d() || x.phi.size() != g.p())
    throw DimensionError("null_projections: point dims do not match A");
  const SvdResult s = svd(g.a);
  return {project_out(leading_columns(s.u, s.rank), x.theta),
          project_out(leading_columns(s.v, s.rank), x.phi)};
}

BilinearGameModel::BilinearGameModel(BilinearGame g) : game_(std::move(g)) {}

Vector BilinearGameModel::grad_theta(const JointPoint& x) const {
  check_dims(x);
  Vector gt = game_.a * x.phi;
  for (std::size_t i = 0; i < gt.size(); ++i) gt[i] += game_.b[i];
  return gt;
}

Vector BilinearGameModel::grad_phi(const JointPoint& x) const {
  check_dims(x);
  Vector gp = transpose_times(game_.a, x.theta);
  for (std::size_t j = 0; j < gp.size(); ++j) gp[j] += game_.c[j];
  return gp;
}

GradientPair BilinearGameModel::grads(const JointPoint& x) const {
  check_dims(x);
  return bilinear_grads(game_, x);
}

std::optional<double> BilinearGameModel::value(const JointPoint& x) const {
  check_dims(x);
  return dot(x.theta, game_.a * x.phi) + dot(x.theta, game_.b) + dot(game_.c, x.phi);
}

// ξ = (Aφ + b, -(Aᵀθ + c)), so J = [[0, A], [-Aᵀ, 0]].
JointPoint BilinearGameModel::jacobian_vector(const JointPoint& x, const JointPoint& v) const {
  check_dims(x);
  check_dims(v);
  Vector lower = transpose_times(game_.a, v.theta);
  for (double& e : lower) e = -e;
  return {game_.a * v.phi, std::move(lower)};
}

JointPoint BilinearGameModel::jacobian_transpose_vector(const JointPoint& x, const JointPoint& v) const {
  check_dims(x);
  check_dims(v);
  Vector upper = game_.a * v.phi;
  for (double& e : upper) e = -e;
  return {std::move(upper), transpose_times(game_.a, v.theta)};
}

}  // namespace cg
