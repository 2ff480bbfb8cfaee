#pragma once

// Dense matrices over a dual scalar model: exact rationals (GMP) for the
// algebraic identities, 64-bit floats for spectral work. Arithmetic between
// an exact and an approximate operand always yields an approximate result.

#include <gmpxx.h>

#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace quadmorph {

using Rational = mpq_class;

/// Parses "p/q" or "p" into a canonical rational. Throws Error(Format).
Rational parse_rational(std::string_view text);

class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational q);  // NOLINT(google-explicit-constructor)
  Scalar(double d) : value_(d) {}  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  Scalar(I v) : value_(Rational(static_cast<long>(v))) {}  // NOLINT

  static Scalar ratio(long num, long den);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  double to_double() const;
  std::string to_string() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  std::variant<Rational, double> value_;
};

/// Tolerances used wherever approximate values are compared.
struct TolerancePolicy {
  double identity_tol = 1e-9;  // relative Frobenius residual
  double eig_pair_tol = 1e-8;  // eigenvalue clustering, relative to max(1, |lambda|max)
  double rank_tol = 1e-9;      // singular values below rank_tol * sigma_max are zero

  /// Throws Error(InvalidTolerance) unless every field is strictly positive.
  void validate() const;
};

class Matrix {
 public:
  Matrix() = default;
  /// Exact zero matrix.
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static Matrix approx_zeros(std::size_t rows, std::size_t cols);
  static Matrix identity(std::size_t n);
  static Matrix exact(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  static Matrix approx(std::size_t rows, std::size_t cols, std::vector<double> entries);
  static Matrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix diagonal(std::span<const Rational> entries);
  static Matrix diagonal(std::initializer_list<long> entries);
  static Matrix approx_diagonal(std::span<const double> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_exact() const { return std::holds_alternative<std::vector<Rational>>(data_); }

  Scalar at(std::size_t r, std::size_t c) const;
  double value(std::size_t r, std::size_t c) const;
  /// Requires exact mode.
  const Rational& rational(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& v);

  /// Row-major doubles regardless of mode.
  std::vector<double> values() const;
  /// Row-major rationals; requires exact mode.
  const std::vector<Rational>& rationals() const;

  Matrix to_approx() const;
  Matrix transpose() const;
  Matrix scaled(const Scalar& s) const;
  Matrix operator-() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix columns(std::span<const std::size_t> which) const;

  double frobenius_norm() const;
  double max_abs() const;
  double trace_value() const;
  Scalar trace() const;
  /// Exact zero test in exact mode, literal 0.0 test otherwise.
  bool is_zero() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  /// Same shape, same mode, identical entries.
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::variant<std::vector<Rational>, std::vector<double>> data_{std::vector<Rational>{}};
};

Matrix block_diagonal(const Matrix& a, const Matrix& b);
/// [[a, b], [c, d]]
Matrix block_matrix(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);
Matrix kronecker(const Matrix& a, const Matrix& b);
/// Matrix-vector product in floating point.
std::vector<double> apply(const Matrix& a, std::span<const double> x);
double quadratic_form(const Matrix& a, std::span<const double> x);

/// ||r||_F / sqrt(n): the Frobenius residual measured against ||I_n||_F.
double relative_residual(const Matrix& r, std::size_t n);
bool is_symmetric(const Matrix& a, const TolerancePolicy& tol);
/// ||a^t a - I|| within tolerance, exactly in exact mode.
bool is_orthogonal(const Matrix& a, const TolerancePolicy& tol);

/// Passes when the residual is exactly zero (exact mode) or its relative
/// Frobenius norm is within identity_tol.
bool residual_ok(const Matrix& residual, std::size_t n, const TolerancePolicy& tol);

}  // namespace quadmorph
