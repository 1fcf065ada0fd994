#pragma once

// Small dense linear algebra: the numerical substrate for the rest of the library.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cg {

using Vector = std::vector<double>;
using Complex = std::complex<double>;

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix diagonal(std::span<const double> diag);
  static Matrix column(std::span<const double> v);
  static Matrix row(std::span<const double> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::span<double> row_span(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row_span(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vector col_vector(std::size_t j) const;
  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b, double scale = 1.0);

  double frobenius_norm() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);
/// aᵀ·x without forming the transpose.
Vector transpose_times(const Matrix& a, std::span<const double> x);

// Vector helpers used throughout.
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double squared_norm(std::span<const double> a);
Vector axpy(double alpha, std::span<const double> x, std::span<const double> y);  // alpha*x + y
Vector subtract(std::span<const double> a, std::span<const double> b);
bool all_finite(std::span<const double> v);

/// Determinant by partial-pivot Gaussian elimination.
double determinant(const Matrix& m);

struct SvdResult {
  Matrix u;  ///< rows × k, orthonormal columns (k = min(rows, cols))
  Matrix d;  ///< k × k diagonal
  Matrix v;  ///< cols × k, orthonormal columns
  std::size_t rank = 0;
  Vector singular_values;  ///< all k values, descending
};

/// Thin SVD by one-sided Jacobi, a = u·d·vᵀ. Rank uses tol = 1e-12·σ₁·max(rows, cols).
SvdResult svd(const Matrix& a);

/// All eigenvalues of a square matrix (Hessenberg reduction + Francis double-shift QR).
std::vector<Complex> eig_dense(const Matrix& m);

/// Roots of a polynomial given high→low coefficients (Aberth–Ehrlich iteration).
std::vector<Complex> poly_roots(std::span<const Complex> coeffs);
std::vector<Complex> poly_roots(std::span<const double> coeffs);

Complex poly_eval(std::span<const Complex> coeffs, Complex z);

double spectral_radius(std::span<const Complex> eigs);

/// Greedy nearest-pair matching of two eigenvalue lists.
/// Returns the largest matched distance, or +inf when sizes differ.
double multiset_distance(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace cg
