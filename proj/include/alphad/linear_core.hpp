#pragma once

#include "alphad/polynomial.hpp"
#include "alphad/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace alphad {

inline constexpr double kDefaultRankTol = 1e-9;
inline constexpr std::size_t kMaxDimension = 16;

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b);
  /// New matrix made of the listed rows, in the given order.
  [[nodiscard]] Matrix select_rows(std::span<const std::size_t> indices) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
using PolyMatrixT = Matrix<BasicPoly<T>>;
using PolyMatrix = PolyMatrixT<Rational>;

/// Entry-wise evaluation of a polynomial matrix.
template <class T>
Matrix<T> evaluate(const PolyMatrixT<T>& m, const T& x);

Matrix<double> to_double(const Matrix<Rational>& m);

template <class T>
T max_abs_entry(const Matrix<T>& m);

/// Gaussian elimination with partial pivoting (exact for Rational).
/// Throws NotSquare.
template <class T>
T determinant(const Matrix<T>& m);

/// Cofactor expansion for n <= 4, fraction-free Bareiss otherwise.
/// Throws NotSquare.
template <class T>
BasicPoly<T> det_poly(const PolyMatrixT<T>& m);

/// Numerical rank: pivots with magnitude <= tol * max|entry| count as zero.
/// For Rational the test is exact and `tol` is ignored.
template <class T>
std::size_t rank(const Matrix<T>& m, double tol = kDefaultRankTol);

/// Main variables expressed through the secondary (free) variables:
/// x[main_vars[k]] = sum_s coefficients(k, s) * x[secondary_vars[s]].
template <class T>
struct GeneralSolution {
  std::size_t n = 0;
  std::vector<std::size_t> main_vars;
  std::vector<std::size_t> secondary_vars;
  Matrix<T> coefficients;

  /// Full-length vector for the given secondary values.
  [[nodiscard]] std::vector<T> evaluate(std::span<const T> secondary_values) const;
  /// One vector per secondary variable (that variable 1, the others 0).
  [[nodiscard]] std::vector<std::vector<T>> basis() const;
};

/// Reduced row echelon form; columns scanned left to right, pivot row is the
/// one with the largest magnitude in the column (ties to the lower row).
/// Throws FullRank when no secondary variable exists.
template <class T>
GeneralSolution<T> general_solution(const Matrix<T>& m, double tol = kDefaultRankTol);

/// Every secondary variable set to 1. Throws NonPositiveComponent.
template <class T>
std::vector<T> particular_positive(const GeneralSolution<T>& gs);

/// Divides by the component sum. Throws NonPositiveComponent.
template <class T>
std::vector<T> normalize(std::span<const T> v);

/// A strictly positive x with A x = 0, if one exists (exact linear programming).
std::optional<std::vector<Rational>> positive_null_vector(const Matrix<Rational>& a);

/// Matrix-vector product.
template <class T>
std::vector<T> multiply(const Matrix<T>& m, std::span<const T> v);

}  // namespace alphad
