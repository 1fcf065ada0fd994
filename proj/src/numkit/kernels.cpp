#include "cg/kernels.hpp"

#include <cassert>
#include <cstdint>
#include <vector>

namespace cg::kernels {
namespace {

// Row kernels shared by the serial and parallel drivers; sharing them is what
// keeps both paths bitwise identical.

inline void matmul_row(const double* a, const double* b, double* c, std::size_t i, std::size_t k,
                       std::size_t n) {
  double* ci = c + i * n;
  for (std::size_t j = 0; j < n; ++j) ci[j] = 0.0;
  const double* ai = a + i * k;
  for (std::size_t p = 0; p < k; ++p) {
    const double aip = ai[p];
    const double* bp = b + p * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] += aip * bp[j];
  }
}

inline void matmul_at_b_row(const double* a, const double* b, double* c, std::size_t i,
                            std::size_t k, std::size_t m, std::size_t n) {
  double* ci = c + i * n;
  for (std::size_t j = 0; j < n; ++j) ci[j] = 0.0;
  for (std::size_t p = 0; p < k; ++p) {
    const double api = a[p * m + i];
    const double* bp = b + p * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] += api * bp[j];
  }
}

// r×c row-major → c×r row-major
std::vector<double> transposed(const double* x, std::size_t r, std::size_t c) {
  std::vector<double> t(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) t[j * r + i] = x[i * c + j];
  return t;
}

bool go_parallel(std::size_t m, std::size_t k, std::size_t n) {
  return m > 1 && m * k * n >= kParallelThreshold;
}

}  // namespace

void matmul(std::span<const double> a, std::span<const double> b, std::span<double> c,
            std::size_t m, std::size_t k, std::size_t n) {
  assert(a.size() == m * k && b.size() == k * n && c.size() == m * n);
  if (!go_parallel(m, k, n)) return matmul_serial(a, b, c, m, k, n);
  const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i)
    matmul_row(a.data(), b.data(), c.data(), static_cast<std::size_t>(i), k, n);
}

void matmul_serial(std::span<const double> a, std::span<const double> b, std::span<double> c,
                   std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) matmul_row(a.data(), b.data(), c.data(), i, k, n);
}

void matmul_at_b(std::span<const double> a, std::span<const double> b, std::span<double> c,
                 std::size_t k, std::size_t m, std::size_t n) {
  assert(a.size() == k * m && b.size() == k * n && c.size() == m * n);
  if (!go_parallel(m, k, n)) return matmul_at_b_serial(a, b, c, k, m, n);
  const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i)
    matmul_at_b_row(a.data(), b.data(), c.data(), static_cast<std::size_t>(i), k, m, n);
}

void matmul_at_b_serial(std::span<const double> a, std::span<const double> b, std::span<double> c,
                        std::size_t k, std::size_t m, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) matmul_at_b_row(a.data(), b.data(), c.data(), i, k, m, n);
}

// a·bᵀ runs as a·(bᵀ) on an explicit transpose. Each entry still sums over p in
// increasing order, and the row kernel vectorizes over j instead of reducing.
void matmul_a_bt(std::span<const double> a, std::span<const double> b, std::span<double> c,
                 std::size_t m, std::size_t k, std::size_t n) {
  assert(a.size() == m * k && b.size() == n * k && c.size() == m * n);
  if (!go_parallel(m, k, n)) return matmul_a_bt_serial(a, b, c, m, k, n);
  const std::vector<double> bt = transposed(b.data(), n, k);
  const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i)
    matmul_row(a.data(), bt.data(), c.data(), static_cast<std::size_t>(i), k, n);
}

void matmul_a_bt_serial(std::span<const double> a, std::span<const double> b, std::span<double> c,
                        std::size_t m, std::size_t k, std::size_t n) {
  const std::vector<double> bt = transposed(b.data(), n, k);
  for (std::size_t i = 0; i < m; ++i) matmul_row(a.data(), bt.data(), c.data(), i, k, n);
}

}  // namespace cg::kernels
