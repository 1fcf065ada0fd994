#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "cg/errors.hpp"
#include "cg/kernels.hpp"
#include "cg/numkit.hpp"
#include "gen.hpp"

using namespace cg;
using cg::testing::Gen;

namespace {

double reconstruction_error(const Matrix& a, const SvdResult& s) {
  return (a - s.u * s.d * s.v.transpose()).frobenius_norm();
}

double orthonormality_error(const Matrix& q) {
  const Matrix g = q.transpose() * q;
  return (g - Matrix::identity(g.rows())).frobenius_norm();
}

bool contains(const std::vector<Complex>& roots, Complex z, double tol) {
  return std::any_of(roots.begin(), roots.end(), [&](Complex r) { return std::abs(r - z) < tol; });
}

}  // namespace

TEST(Svd, DiagonalRankOne) {
  const SvdResult s = svd(Matrix{{3, 0}, {0, 0}});
  EXPECT_DOUBLE_EQ(s.singular_values[0], 3.0);
  EXPECT_DOUBLE_EQ(s.singular_values[1], 0.0);
  EXPECT_EQ(s.rank, 1u);
}

TEST(Svd, Permutation) {
  const SvdResult s = svd(Matrix{{0, 1}, {1, 0}});
  EXPECT_NEAR(s.singular_values[0], 1.0, 1e-15);
  EXPECT_NEAR(s.singular_values[1], 1.0, 1e-15);
  EXPECT_EQ(s.rank, 2u);
}

TEST(Svd, RandomReconstructs) {
  Gen g(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = g.index(1, 6), c = g.index(1, 6);
    const Matrix a = g.matrix(r, c);
    const SvdResult s = svd(a);
    EXPECT_LE(reconstruction_error(a, s), 1e-10 * std::max(1.0, a.frobenius_norm()));
    EXPECT_LE(orthonormality_error(s.u), 1e-10);
    EXPECT_LE(orthonormality_error(s.v), 1e-10);
    EXPECT_TRUE(std::is_sorted(s.singular_values.rbegin(), s.singular_values.rend()));
  }
}

TEST(Svd, FourByThree) {
  Gen g(4);
  const Matrix a = g.matrix(4, 3);
  EXPECT_LE(reconstruction_error(a, svd(a)), 1e-10);
}

TEST(Svd, RankOfLowRankProducts) {
  Gen g(5);
  for (std::size_t rank = 1; rank <= 4; ++rank) EXPECT_EQ(svd(g.low_rank(4, 4, rank)).rank, rank);
  EXPECT_EQ(svd(Matrix(3, 2)).rank, 0u);
}

TEST(Svd, RejectsNonFinite) {
  EXPECT_THROW(svd(Matrix{{1, std::numeric_limits<double>::quiet_NaN()}}), DomainError);
}

TEST(Eig, Rotation) {
  const auto e = eig_dense(Matrix{{0, 1}, {-1, 0}});
  ASSERT_EQ(e.size(), 2u);
  EXPECT_TRUE(contains(e, {0, 1}, 1e-14));
  EXPECT_TRUE(contains(e, {0, -1}, 1e-14));
}

TEST(Eig, Identity) {
  for (Complex z : eig_dense(Matrix::identity(3))) EXPECT_NEAR(std::abs(z - Complex(1, 0)), 0.0, 1e-14);
}

TEST(Eig, NonSquare) { EXPECT_THROW(eig_dense(Matrix(2, 3)), DimensionError); }

// Eigenvalues of a matrix built as Q·T·Qᵀ from a known block-diagonal T.
TEST(Eig, KnownSpectrumUnderOrthogonalSimilarity) {
  Gen g(8);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = g.uniform(-2, 2), b = g.uniform(0.1, 2), c = g.uniform(-2, 2), d = g.uniform(-2, 2);
    Matrix t(4, 4);
    t(0, 0) = a;
    t(0, 1) = b;
    t(1, 0) = -b;
    t(1, 1) = a;
    t(2, 2) = c;
    t(3, 3) = d;
    t(2, 3) = g.uniform(-1, 1);
    const Matrix q = g.orthogonal(4);
    const std::vector<Complex> expected{{a, b}, {a, -b}, {c, 0}, {d, 0}};
    EXPECT_LE(multiset_distance(eig_dense(q * t * q.transpose()), expected), 1e-10);
  }
}

TEST(Roots, Quadratic) {
  const Vector c{1, 0, -1};
  const auto r = poly_roots(c);
  EXPECT_TRUE(contains(r, {1, 0}, 1e-14));
  EXPECT_TRUE(contains(r, {-1, 0}, 1e-14));
}

TEST(Roots, OmdQuartic) {
  const Vector c{1, -2, 1.04, -0.04, 0.01};
  const auto r = poly_roots(c);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_NEAR(spectral_radius(r), 0.994936, 1e-6);
  for (Complex z : r) EXPECT_LE(std::abs(poly_eval(std::vector<Complex>(c.begin(), c.end()), z)), 1e-13);
}

TEST(Roots, DisplayedQuadratic) {
  const double a = 0.1;
  const Vector c{1, -(1 - 2 * a * a), -a * a};
  const auto r = poly_roots(c);
  EXPECT_TRUE(contains(r, {0.990100, 0}, 1e-6));
  EXPECT_TRUE(contains(r, {-0.010100, 0}, 1e-6));
}

TEST(Roots, Degenerate) {
  const Vector c{0, 1, 1};
  EXPECT_THROW(poly_roots(c), DomainError);
}

TEST(Roots, RandomRootsRecovered) {
  Gen g(21);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Complex> roots;
    for (int k = 0; k < 2; ++k) {
      const Complex z(g.uniform(-1, 1), g.uniform(0.05, 1));
      roots.push_back(z);
      roots.push_back(std::conj(z));
    }
    std::vector<Complex> coeffs{1};
    for (Complex z : roots) {
      std::vector<Complex> next(coeffs.size() + 1, 0);
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        next[i] += coeffs[i];
        next[i + 1] -= coeffs[i] * z;
      }
      coeffs = next;
    }
    EXPECT_LE(multiset_distance(poly_roots(coeffs), roots), 1e-9);
  }
}

TEST(SpectralRadius, Examples) {
  const std::vector<Complex> a{{0, 1}, {0, -1}}, b{{0.5, 0}, {-0.25, 0}};
  EXPECT_DOUBLE_EQ(spectral_radius(a), 1.0);
  EXPECT_DOUBLE_EQ(spectral_radius(b), 0.5);
  EXPECT_THROW(spectral_radius(std::vector<Complex>{}), DomainError);
}

TEST(MultisetDistance, SizeMismatchIsInfinite) {
  const std::vector<Complex> a{{1, 0}}, b{{1, 0}, {2, 0}};
  EXPECT_TRUE(std::isinf(multiset_distance(a, b)));
}

TEST(Determinant, Examples) {
  EXPECT_DOUBLE_EQ(determinant(Matrix{{2, 0}, {0, 3}}), 6.0);
  EXPECT_NEAR(determinant(Matrix{{0, 1}, {1, 0}}), -1.0, 1e-15);
}

class KernelParity : public ::testing::TestWithParam<std::tuple<std::size_t, std::size_t, std::size_t>> {};

TEST_P(KernelParity, ParallelMatchesSerialBitwise) {
  const auto [m, k, n] = GetParam();
  Gen g(m * 1000 + k * 10 + n);
  const Matrix a = g.matrix(m, k), b = g.matrix(k, n), at = g.matrix(k, m), bt = g.matrix(n, k);
  Vector c1(m * n), c2(m * n);
  kernels::matmul(a.data(), b.data(), c1, m, k, n);
  kernels::matmul_serial(a.data(), b.data(), c2, m, k, n);
  EXPECT_EQ(c1, c2);
  kernels::matmul_at_b(at.data(), b.data(), c1, k, m, n);
  kernels::matmul_at_b_serial(at.data(), b.data(), c2, k, m, n);
  EXPECT_EQ(c1, c2);
  kernels::matmul_a_bt(a.data(), bt.data(), c1, m, k, n);
  kernels::matmul_a_bt_serial(a.data(), bt.data(), c2, m, k, n);
  EXPECT_EQ(c1, c2);

  // Straight triple loop as an independent check of the values.
  const Matrix ref = a * b;
  kernels::matmul(a.data(), b.data(), c1, m, k, n);
  for (std::size_t i = 0; i < m * n; ++i) EXPECT_NEAR(c1[i], ref.data()[i], 1e-12 * k);
}

INSTANTIATE_TEST_SUITE_P(Shapes, KernelParity,
                         ::testing::Values(std::make_tuple(3, 4, 5), std::make_tuple(256, 64, 64),
                                           std::make_tuple(256, 2, 64), std::make_tuple(64, 256, 1)));
