#pragma once

#include <optional>

#include "cg/optimizers.hpp"

namespace cg {

enum class SpectrumMethod { SCA, ACA, ACA_reduced };

std::string_view to_string(SpectrumMethod m);

struct SpectralReport {
  std::vector<Complex> eigenvalues;
  double rho = 0.0;
  SpectrumMethod method = SpectrumMethod::SCA;
  /// Rate bound from the matching convergence result, when its hypotheses hold.
  std::optional<double> bound;
  /// Whether the parameters lie in the proven convergence region, when one applies.
  std::optional<bool> region_ok;
  StepConfig params;
  Vector singular_values;
  /// Spectral radius of the dynamics on the leading r singular directions.
  /// Equals rho for square nonsingular A; below 1 is what matters for rank-deficient A.
  double rho_reduced = 0.0;
  /// Largest matched distance to the dense eigensolve, when one was run.
  std::optional<double> cross_check;
};

/// Companion matrix of the simultaneous update on the stacked state
/// [θ_t, φ_t, θ_{t−1}, φ_{t−1}].
Matrix build_f1(const Matrix& a, const StepConfig& cfg);
/// Companion matrix of the alternating update on the same stacked state.
Matrix build_f2(const Matrix& a, const StepConfig& cfg);
/// Alternating update with β₁ = 0, α₁ = α₂ = β₂ = α on the state [θ_t, φ_t]:
/// [[I, −αA], [αAᵀ, I − 2α²AᵀA]].
Matrix build_f2_reduced(const Matrix& a, double alpha);

/// β₁ = 0 and α₁ = α₂ = β₂.
bool aca_special_case(const StepConfig& cfg);

/// Roots of λ²(1−λ)² + (λ(α₂+β₂) − β₂)(λ(α₁+β₁) − β₁)ζ.
std::vector<Complex> sca_quartic_roots(double zeta, const StepConfig& cfg);
/// Roots of λ² − 2(1−α²ζ)λ + (1−α²ζ).
std::vector<Complex> aca_quadratic_roots(double zeta, double alpha);

SpectralReport sca_spectrum(const Matrix& a, const StepConfig& cfg);
SpectralReport aca_spectrum(const Matrix& a, const StepConfig& cfg);

/// Square nonsingular A: 0 < α+β ≤ 1/σ_max and |α−β| ≤ σ_min(α+β)²/10.
bool region_check_prop32(const Matrix& a, double alpha, double beta);
/// Any nonzero A: 0 < α+β ≤ 1/σ₁ and |α−β|/(α+β)² ≤ σ_r/10.
bool region_check_prop33(const Matrix& a, double alpha, double beta);

/// √(½ + ½√(1 − α²σ_r²)), for 0 < α ≤ 1/σ₁.
double omd_rate_bound(const Matrix& a, double alpha);
/// 1 − α²σ_r² + α⁴σ_r⁴, for 0 < α ≤ 1/(√2·σ₁).
double aca_rate_bound(const Matrix& a, double alpha);

/// Per-step factor exp(slope) of a least-squares line through log Δ_t, t ≥ burn_in.
/// nullopt when a delta is zero or non-finite.
std::optional<double> empirical_rate(std::span<const double> deltas, std::size_t burn_in);
/// Burn-in defaults to 20% of the trajectory. nullopt also for diverged trajectories.
std::optional<double> empirical_rate(const Trajectory& traj, std::optional<std::size_t> burn_in = std::nullopt);

struct SweepCell {
  double log10_final_dist = 0.0;  ///< capped at log10(kDivergenceGuard²)
  bool diverged = false;
  double rho = 0.0;
};

struct SweepGrid {
  Vector alphas;
  Vector betas;
  std::vector<SweepCell> cells;  ///< row-major, alphas index rows

  SweepCell& cell(std::size_t i, std::size_t j) { return cells[i * betas.size() + j]; }
  const SweepCell& cell(std::size_t i, std::size_t j) const { return cells[i * betas.size() + j]; }
};

/// k/n · upper for k = 1..n.
Vector sweep_axis(std::size_t n, double upper = 0.5);

/// Runs GradSCA or GradACA with α₁=α₂=α, β₁=β₂=β for every grid cell on the centered game A.
/// jobs = 0 uses the OpenMP default thread count.
SweepGrid sweep(const Matrix& a, Method method, const Vector& alphas, const Vector& betas, std::size_t steps,
                const JointPoint& start, int jobs = 0);
SweepGrid sweep_serial(const Matrix& a, Method method, const Vector& alphas, const Vector& betas,
                       std::size_t steps, const JointPoint& start);

}  // namespace cg
