#pragma once

#include <optional>
#include <utility>

#include "cg/numkit.hpp"

namespace cg {

/// Parameters of both players: θ (the minimizer) and φ (the maximizer).
struct JointPoint {
  Vector theta;
  Vector phi;

  bool all_finite() const;
  friend bool operator==(const JointPoint&, const JointPoint&) = default;
};

struct GradientPair {
  Vector theta;
  Vector phi;
};

/// A smooth two-player zero-sum game min_θ max_φ V(θ, φ).
///
/// Gradients are raw partial derivatives of V. Optimizers descend on θ and
/// ascend on φ. The simultaneous field used by Jacobian methods is
/// ξ = (∇_θV, −∇_φV), and J is its Jacobian.
class Game {
 public:
  virtual ~Game() = default;

  virtual std::size_t theta_dim() const = 0;
  virtual std::size_t phi_dim() const = 0;

  virtual Vector grad_theta(const JointPoint& x) const = 0;
  virtual Vector grad_phi(const JointPoint& x) const = 0;
  /// Both partials at the same point; override when they share work.
  virtual GradientPair grads(const JointPoint& x) const;

  virtual std::optional<double> value(const JointPoint&) const { return std::nullopt; }

  virtual bool has_jacobian() const { return false; }
  /// J·v, v laid out as (θ-block, φ-block). Throws CapabilityError by default.
  virtual JointPoint jacobian_vector(const JointPoint& x, const JointPoint& v) const;
  /// Jᵀ·v. Throws CapabilityError by default.
  virtual JointPoint jacobian_transpose_vector(const JointPoint& x, const JointPoint& v) const;

  /// ξ = (∇_θV, −∇_φV)
  JointPoint simultaneous_field(const JointPoint& x) const;
  /// Jᵀξ, the gradient of ½‖ξ‖².
  JointPoint jacobian_transpose_vf(const JointPoint& x) const;

  void check_dims(const JointPoint& x) const;
};

/// min_θ max_φ θᵀAφ + θᵀb + cᵀφ
struct BilinearGame {
  Matrix a;  ///< d × p
  Vector b;  ///< d
  Vector c;  ///< p

  BilinearGame(Matrix a, Vector b, Vector c);
  /// Centered game (b = 0, c = 0).
  explicit BilinearGame(Matrix a);

  std::size_t d() const { return a.rows(); }
  std::size_t p() const { return a.cols(); }
  bool centered() const;
};

/// The scalar game min_θ max_φ θ·φ.
BilinearGame scalar_game();

/// Returns (Aφ + b, Aᵀθ + c).
GradientPair bilinear_grads(const BilinearGame& g, const JointPoint& x);

struct Stationarity {
  bool exists = false;
  std::optional<JointPoint> point;  ///< minimum-norm stationary point when it exists
};

Stationarity stationarity(const BilinearGame& g);

/// Same A with b = c = 0. Throws UnsupportedGameError when no stationary point exists.
BilinearGame shift_to_origin(const BilinearGame& g);

/// (P_N(θ), P_M(φ)) with N = null(Aᵀ), M = null(A).
std::pair<Vector, Vector> null_projections(const BilinearGame& g, const JointPoint& x);

/// Game-interface adapter for a bilinear game, with analytic Jacobian products.
class BilinearGameModel final : public Game {
 public:
  explicit BilinearGameModel(BilinearGame g);

  const BilinearGame& game() const { return game_; }

  std::size_t theta_dim() const override { return game_.d(); }
  std::size_t phi_dim() const override { return game_.p(); }
  Vector grad_theta(const JointPoint& x) const override;
  Vector grad_phi(const JointPoint& x) const override;
  GradientPair grads(const JointPoint& x) const override;
  std::optional<double> value(const JointPoint& x) const override;

  bool has_jacobian() const override { return true; }
  JointPoint jacobian_vector(const JointPoint& x, const JointPoint& v) const override;
  JointPoint jacobian_transpose_vector(const JointPoint& x, const JointPoint& v) const override;

 private:
  BilinearGame game_;
};

}  // namespace cg
