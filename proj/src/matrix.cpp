#include "quadmorph/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quadmorph/error.hpp"

namespace quadmorph {

namespace {

using ExactData = std::vector<Rational>;
using ApproxData = std::vector<double>;

std::string shape(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

template <class T>
void multiply_into(const std::vector<T>& a, const std::vector<T>& b, std::vector<T>& out,
                   std::size_t n, std::size_t k, std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const T& aip = a[i * k + p];
      if (aip == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        const T& bpj = b[p * m + j];
        if (bpj == 0) continue;
        out[i * m + j] += aip * bpj;
      }
    }
  }
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }),
          s.end());
  if (s.empty()) throw Error(ErrorKind::Format, "empty rational literal");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) return false;
    return std::all_of(part.begin() + static_cast<long>(start), part.end(),
                       [](unsigned char ch) { return std::isdigit(ch); });
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.find('-') != std::string::npos)
    throw Error(ErrorKind::Format, "malformed rational literal '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw Error(ErrorKind::Format, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(Rational q) : value_(std::move(q)) {
  std::get<Rational>(value_).canonicalize();
}

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw Error(ErrorKind::Format, "zero denominator");
  return Scalar(Rational(num, den));
}

const Rational& Scalar::rational() const {
  if (!is_exact()) throw Error(ErrorKind::Format, "scalar is not exact");
  return std::get<Rational>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<Rational>(value_).get_d();
  return std::get<double>(value_);
}

std::string Scalar::to_string() const {
  if (is_exact()) return std::get<Rational>(value_).get_str();
  std::ostringstream os;
  os.precision(17);
  os << std::get<double>(value_);
  return os.str();
}

namespace {
template <class Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
  if (a.is_exact() && b.is_exact()) return Scalar(Rational(op(a.rational(), b.rational())));
  return Scalar(op(a.to_double(), b.to_double()));
}
}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}
Scalar operator-(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
}
Scalar operator*(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
}
Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_exact() ? b.rational() == 0 : b.to_double() == 0.0)
    throw Error(ErrorKind::Format, "division by zero");
  return combine(a, b, [](const auto& x, const auto& y) { return x / y; });
}
Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-rational()));
  return Scalar(-to_double());
}
bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.rational() == b.rational();
  return a.to_double() == b.to_double();
}

// --------------------------------------------------------- Tolerances

void TolerancePolicy::validate() const {
  if (!(identity_tol > 0) || !(eig_pair_tol > 0) || !(rank_tol > 0))
    throw Error(ErrorKind::InvalidTolerance, "all tolerances must be strictly positive");
}

// ------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(ExactData(rows * cols, Rational(0))) {}

Matrix Matrix::approx_zeros(std::size_t rows, std::size_t cols) {
  return approx(rows, cols, ApproxData(rows * cols, 0.0));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  auto& d = std::get<ExactData>(m.data_);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1;
  return m;
}

Matrix Matrix::exact(std::size_t rows, std::size_t cols, std::vector<Rational> entries) {
  if (entries.size() != rows * cols)
    throw Error(ErrorKind::ShapeMismatch, "entry count does not match rows*cols");
  for (auto& q : entries) q.canonicalize();
  Matrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(entries);
  return m;
}

Matrix Matrix::approx(std::size_t rows, std::size_t cols, std::vector<double> entries) {
  if (entries.size() != rows * cols)
    throw Error(ErrorKind::ShapeMismatch, "entry count does not match rows*cols");
  Matrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(entries);
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  ExactData d;
  d.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorKind::ShapeMismatch, "ragged rows");
    for (long v : row) d.emplace_back(v);
  }
  return exact(r, c, std::move(d));
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.front().size();
  ApproxData d;
  d.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorKind::ShapeMismatch, "ragged rows");
    d.insert(d.end(), row.begin(), row.end());
  }
  return approx(r, c, std::move(d));
}

Matrix Matrix::diagonal(std::span<const Rational> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, i, Scalar(entries[i]));
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<long> entries) {
  std::vector<Rational> q(entries.begin(), entries.end());
  return diagonal(std::span<const Rational>(q));
}

Matrix Matrix::approx_diagonal(std::span<const double> entries) {
  Matrix m = approx_zeros(entries.size(), entries.size());
  auto& d = std::get<ApproxData>(m.data_);
  for (std::size_t i = 0; i < entries.size(); ++i) d[i * entries.size() + i] = entries[i];
  return m;
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
  if (is_exact()) return Scalar(std::get<ExactData>(data_)[r * cols_ + c]);
  return Scalar(std::get<ApproxData>(data_)[r * cols_ + c]);
}

double Matrix::value(std::size_t r, std::size_t c) const {
  if (is_exact()) return std::get<ExactData>(data_)[r * cols_ + c].get_d();
  return std::get<ApproxData>(data_)[r * cols_ + c];
}

const Rational& Matrix::rational(std::size_t r, std::size_t c) const {
  return rationals()[r * cols_ + c];
}

const std::vector<Rational>& Matrix::rationals() const {
  if (!is_exact()) throw Error(ErrorKind::Format, "matrix is not exact");
  return std::get<ExactData>(data_);
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (is_exact() && v.is_exact()) {
    std::get<ExactData>(data_)[r * cols_ + c] = v.rational();
    return;
  }
  if (is_exact()) *this = to_approx();
  std::get<ApproxData>(data_)[r * cols_ + c] = v.to_double();
}

std::vector<double> Matrix::values() const {
  if (!is_exact()) return std::get<ApproxData>(data_);
  const auto& d = std::get<ExactData>(data_);
  std::vector<double> out(d.size());
  std::transform(d.begin(), d.end(), out.begin(), [](const Rational& q) { return q.get_d(); });
  return out;
}

Matrix Matrix::to_approx() const { return approx(rows_, cols_, values()); }

Matrix Matrix::transpose() const {
  return std::visit(
      [&](const auto& d) {
        using Data = std::decay_t<decltype(d)>;
        Data out(d.size());
        for (std::size_t i = 0; i < rows_; ++i)
          for (std::size_t j = 0; j < cols_; ++j) out[j * rows_ + i] = d[i * cols_ + j];
        Matrix m;
        m.rows_ = cols_;
        m.cols_ = rows_;
        m.data_ = std::move(out);
        return m;
      },
      data_);
}

Matrix Matrix::scaled(const Scalar& s) const {
  if (is_exact() && s.is_exact()) {
    ExactData d = std::get<ExactData>(data_);
    for (auto& q : d) q *= s.rational();
    return exact(rows_, cols_, std::move(d));
  }
  ApproxData d = values();
  double f = s.to_double();
  for (auto& x : d) x *= f;
  return approx(rows_, cols_, std::move(d));
}

Matrix Matrix::operator-() const { return scaled(Scalar(-1)); }

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw Error(ErrorKind::ShapeMismatch, "block outside of " + shape(*this));
  return std::visit(
      [&](const auto& d) {
        using Data = std::decay_t<decltype(d)>;
        Data out;
        out.reserve(nr * nc);
        for (std::size_t i = 0; i < nr; ++i)
          for (std::size_t j = 0; j < nc; ++j) out.push_back(d[(r0 + i) * cols_ + c0 + j]);
        Matrix m;
        m.rows_ = nr;
        m.cols_ = nc;
        m.data_ = std::move(out);
        return m;
      },
      data_);
}

Matrix Matrix::columns(std::span<const std::size_t> which) const {
  return std::visit(
      [&](const auto& d) {
        using Data = std::decay_t<decltype(d)>;
        Data out;
        out.reserve(rows_ * which.size());
        for (std::size_t i = 0; i < rows_; ++i)
          for (std::size_t j : which) out.push_back(d[i * cols_ + j]);
        Matrix m;
        m.rows_ = rows_;
        m.cols_ = which.size();
        m.data_ = std::move(out);
        return m;
      },
      data_);
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : values()) s += x * x;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double s = 0.0;
  for (double x : values()) s = std::max(s, std::abs(x));
  return s;
}

Scalar Matrix::trace() const {
  if (!is_square()) throw Error(ErrorKind::NotSquare, "trace of " + shape(*this));
  Scalar t = is_exact() ? Scalar(0) : Scalar(0.0);
  for (std::size_t i = 0; i < rows_; ++i) t = t + at(i, i);
  return t;
}

double Matrix::trace_value() const { return trace().to_double(); }

bool Matrix::is_zero() const {
  return std::visit(
      [](const auto& d) { return std::all_of(d.begin(), d.end(), [](const auto& x) { return x == 0; }); },
      data_);
}

namespace {
template <class Op>
Matrix elementwise(const Matrix& a, const Matrix& b, Op op, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::ShapeMismatch,
                std::string(what) + " of " + shape(a) + " and " + shape(b));
  if (a.is_exact() && b.is_exact()) {
    const auto& x = a.rationals();
    const auto& y = b.rationals();
    std::vector<Rational> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = op(x[i], y[i]);
    return Matrix::exact(a.rows(), a.cols(), std::move(out));
  }
  auto x = a.values();
  auto y = b.values();
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = op(x[i], y[i]);
  return Matrix::approx(a.rows(), a.cols(), std::move(x));
}
}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  return elementwise(a, b, [](const auto& x, const auto& y) { return x + y; }, "sum");
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  return elementwise(a, b, [](const auto& x, const auto& y) { return x - y; }, "difference");
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorKind::ShapeMismatch, "product of " + shape(a) + " and " + shape(b));
  if (a.is_exact() && b.is_exact()) {
    std::vector<Rational> out(a.rows() * b.cols(), Rational(0));
    multiply_into(a.rationals(), b.rationals(), out, a.rows(), a.cols(), b.cols());
    return Matrix::exact(a.rows(), b.cols(), std::move(out));
  }
  std::vector<double> out(a.rows() * b.cols(), 0.0);
  multiply_into(a.values(), b.values(), out, a.rows(), a.cols(), b.cols());
  return Matrix::approx(a.rows(), b.cols(), std::move(out));
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix block_matrix(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
      b.cols() != d.cols())
    throw Error(ErrorKind::ShapeMismatch, "incompatible blocks");
  const std::size_t rows = a.rows() + c.rows();
  const std::size_t cols = a.cols() + b.cols();
  const bool exact = a.is_exact() && b.is_exact() && c.is_exact() && d.is_exact();
  Matrix out = exact ? Matrix(rows, cols) : Matrix::approx_zeros(rows, cols);
  auto place = [&](const Matrix& blk, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < blk.rows(); ++i)
      for (std::size_t j = 0; j < blk.cols(); ++j) out.set(r0 + i, c0 + j, blk.at(i, j));
  };
  place(a, 0, 0);
  place(b, 0, a.cols());
  place(c, a.rows(), 0);
  place(d, a.rows(), a.cols());
  return out;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  auto zero = [&](std::size_t r, std::size_t c) {
    return a.is_exact() && b.is_exact() ? Matrix(r, c) : Matrix::approx_zeros(r, c);
  };
  return block_matrix(a, zero(a.rows(), b.cols()), zero(b.rows(), a.cols()), b);
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  const bool exact = a.is_exact() && b.is_exact();
  Matrix out = exact ? Matrix(rows, cols) : Matrix::approx_zeros(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Scalar aij = a.at(i, j);
      if (aij == Scalar(0) || aij == Scalar(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out.set(i * b.rows() + k, j * b.cols() + l, aij * b.at(k, l));
    }
  return out;
}

std::vector<double> apply(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.cols())
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match " + shape(a));
  auto v = a.values();
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += v[i * a.cols() + j] * x[j];
    y[i] = s;
  }
  return y;
}

double quadratic_form(const Matrix& a, std::span<const double> x) {
  auto y = apply(a, x);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += x[i] * y[i];
  return s;
}

double relative_residual(const Matrix& r, std::size_t n) {
  return r.frobenius_norm() / std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)));
}

bool residual_ok(const Matrix& residual, std::size_t n, const TolerancePolicy& tol) {
  if (residual.is_exact()) return residual.is_zero();
  return relative_residual(residual, n) <= tol.identity_tol;
}

bool is_symmetric(const Matrix& a, const TolerancePolicy& tol) {
  if (!a.is_square()) return false;
  Matrix d = a - a.transpose();
  if (d.is_exact()) return d.is_zero();
  return d.frobenius_norm() <= tol.identity_tol * std::max(1.0, a.frobenius_norm());
}

bool is_orthogonal(const Matrix& a, const TolerancePolicy& tol) {
  if (!a.is_square()) return false;
  return residual_ok(a.transpose() * a - Matrix::identity(a.rows()), a.rows(), tol);
}

}  // namespace quadmorph
