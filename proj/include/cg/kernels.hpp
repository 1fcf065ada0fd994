#pragma once

// Dense matrix-product kernels. Each OpenMP kernel partitions output rows across
// threads and computes every entry with the same summation order as its serial
// reference, so the two produce bitwise-identical results for any thread count.

#include <cstddef>
#include <span>

namespace cg::kernels {

/// c[m×n] = a[m×k] · b[k×n]
void matmul(std::span<const double> a, std::span<const double> b, std::span<double> c,
            std::size_t m, std::size_t k, std::size_t n);
void matmul_serial(std::span<const double> a, std::span<const double> b, std::span<double> c,
                   std::size_t m, std::size_t k, std::size_t n);

/// c[m×n] = a[k×m]ᵀ · b[k×n]
void matmul_at_b(std::span<const double> a, std::span<const double> b, std::span<double> c,
                 std::size_t k, std::size_t m, std::size_t n);
void matmul_at_b_serial(std::span<const double> a, std::span<const double> b, std::span<double> c,
                        std::size_t k, std::size_t m, std::size_t n);

/// c[m×n] = a[m×k] · b[n×k]ᵀ
void matmul_a_bt(std::span<const double> a, std::span<const double> b, std::span<double> c,
                 std::size_t m, std::size_t k, std::size_t n);
void matmul_a_bt_serial(std::span<const double> a, std::span<const double> b, std::span<double> c,
                        std::size_t m, std::size_t k, std::size_t n);

/// Products smaller than this many multiply-adds run serially.
inline constexpr std::size_t kParallelThreshold = 1 << 14;

}  // namespace cg::kernels
