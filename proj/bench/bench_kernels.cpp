// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "cg/kernels.hpp"
#include "cg/spectra.hpp"

namespace {

std::vector<double> random_buffer(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

using Kernel = void (*)(std::span<const double>, std::span<const double>, std::span<double>, std::size_t,
                        std::size_t, std::size_t);

// Batch × width × width, the shape of a hidden layer in the desk-scale GAN.
template <Kernel K>
void BM_matmul(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto n = k;
  const auto a = random_buffer(m * k, 1), b = random_buffer(k * n, 2);
  std::vector<double> c(m * n);
  for (auto _ : state) {
    K(a, b, c, m, k, n);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m * k * n));
}

template <Kernel K>
void BM_matmul_at_b(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(1));
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto n = m;
  const auto a = random_buffer(k * m, 1), b = random_buffer(k * n, 2);
  std::vector<double> c(m * n);
  for (auto _ : state) {
    K(a, b, c, k, m, n);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m * k * n));
}

template <Kernel K>
void BM_matmul_a_bt(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto n = k;
  const auto a = random_buffer(m * k, 1), b = random_buffer(n * k, 2);
  std::vector<double> c(m * n);
  for (auto _ : state) {
    K(a, b, c, m, k, n);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m * k * n));
}

void shapes(benchmark::internal::Benchmark* b) {
  for (int batch : {256, 1024})
    for (int width : {64, 256}) b->Args({batch, width});
}

BENCHMARK(BM_matmul<cg::kernels::matmul>)->Apply(shapes)->UseRealTime();
BENCHMARK(BM_matmul<cg::kernels::matmul_serial>)->Apply(shapes)->UseRealTime();
BENCHMARK(BM_matmul_at_b<cg::kernels::matmul_at_b>)->Apply(shapes)->UseRealTime();
BENCHMARK(BM_matmul_at_b<cg::kernels::matmul_at_b_serial>)->Apply(shapes)->UseRealTime();
BENCHMARK(BM_matmul_a_bt<cg::kernels::matmul_a_bt>)->Apply(shapes)->UseRealTime();
BENCHMARK(BM_matmul_a_bt<cg::kernels::matmul_a_bt_serial>)->Apply(shapes)->UseRealTime();

void BM_sweep(benchmark::State& state) {
  const cg::Vector axis = cg::sweep_axis(static_cast<std::size_t>(state.range(0)));
  const cg::Matrix a{{1.0}};
  for (auto _ : state) {
    auto grid = state.range(1) == 0 ? cg::sweep_serial(a, cg::Method::GradACA, axis, axis, 500, {{1}, {1}})
                                    : cg::sweep(a, cg::Method::GradACA, axis, axis, 500, {{1}, {1}},
                                                static_cast<int>(state.range(1)));
    benchmark::DoNotOptimize(grid.cells.data());
  }
}

// Second argument: 0 for the serial reference, otherwise the worker count.
BENCHMARK(BM_sweep)->Args({20, 0})->Args({20, 1})->Args({20, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
