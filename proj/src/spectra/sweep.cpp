#include <omp.h>

#include <cmath>
#include <exception>
#include <limits>

#include "cg/spectra.hpp"

namespace cg {
namespace {

const double kLog10Cap = 2.0 * std::log10(kDivergenceGuard);

struct SweepSetup {
  BilinearGameModel game;
  JointPoint reference;
};

SweepSetup prepare(const Matrix& a, Method method, const Vector& alphas, const Vector& betas,
                   const JointPoint& start) {
  if (alphas.empty() || betas.empty()) throw PreconditionError("sweep: grid is empty");
  if (method != Method::GradSCA && method != Method::GradACA)
    throw ConfigError("sweep supports GradSCA and GradACA, got " + std::string(to_string(method)));
  BilinearGame g(a);
  // Iterates converge to the projection of the start onto the stationary set.
  auto [pt, pp] = null_projections(g, start);
  SweepSetup setup{BilinearGameModel(std::move(g)), {std::move(pt), std::move(pp)}};
  setup.game.check_dims(start);
  return setup;
}

SweepCell run_cell(const SweepSetup& setup, Method method, double alpha, double beta, std::size_t steps,
                   const JointPoint& start) {
  const StepConfig cfg = StepConfig::symmetric(method, alpha, beta);
  const Trajectory traj = run_trajectory(setup.game, cfg, start, steps, setup.reference);
  SweepCell cell;
  cell.diverged = traj.diverged;
  const double final_dist = std::max(traj.deltas.back(), std::numeric_limits<double>::denorm_min());
  cell.log10_final_dist = std::min(std::log10(final_dist), kLog10Cap);
  if (traj.diverged) cell.log10_final_dist = kLog10Cap;
  const Matrix& a = setup.game.game().a;
  cell.rho = method == Method::GradSCA ? sca_spectrum(a, cfg).rho : aca_spectrum(a, cfg).rho;
  return cell;
}

SweepGrid empty_grid(const Vector& alphas, const Vector& betas) {
  SweepGrid grid;
  grid.alphas = alphas;
  grid.betas = betas;
  grid.cells.resize(alphas.size() * betas.size());
  return grid;
}

}  // namespace

Vector sweep_axis(std::size_t n, double upper) {
  Vector axis(n);
  for (std::size_t k = 1; k <= n; ++k) axis[k - 1] = static_cast<double>(k) / static_cast<double>(n) * upper;
  return axis;
}

SweepGrid sweep_serial(const Matrix& a, Method method, const Vector& alphas, const Vector& betas,
                       std::size_t steps, const JointPoint& start) {
  const SweepSetup setup = prepare(a, method, alphas, betas, start);
  SweepGrid grid = empty_grid(alphas, betas);
  for (std::size_t i = 0; i < alphas.size(); ++i)
    for (std::size_t j = 0; j < betas.size(); ++j)
      grid.cell(i, j) = run_cell(setup, method, alphas[i], betas[j], steps, start);
  return grid;
}

SweepGrid sweep(const Matrix& a, Method method, const Vector& alphas, const Vector& betas, std::size_t steps,
                const JointPoint& start, int jobs) {
  const SweepSetup setup = prepare(a, method, alphas, betas, start);
  SweepGrid grid = empty_grid(alphas, betas);
  const auto n = static_cast<std::ptrdiff_t>(grid.cells.size());
  const std::size_t nb = betas.size();
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  std::vector<std::exception_ptr> errors(grid.cells.size());

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      grid.cells[idx] = run_cell(setup, method, alphas[idx / nb], betas[idx % nb], steps, start);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return grid;
}

}  // namespace cg
