#include "quadmorph/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "quadmorph/error.hpp"

namespace quadmorph {

namespace {

constexpr int kMaxJacobiSweeps = 100;
// A projected standard basis vector is accepted into a cluster basis when
// its residual norm exceeds this; at least one candidate always reaches
// 1/sqrt(n) so the search cannot stall.
constexpr double kBasisAcceptance = 1e-3;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Cyclic Jacobi on a row-major symmetric n x n array. On return `a` holds
// the eigenvalues on its diagonal and `v` the eigenvectors as columns.
void jacobi_eigen(std::vector<double>& a, std::vector<double>& v, std::size_t n) {
  v.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return;

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (std::sqrt(off) <= 1e-15 * scale * static_cast<double>(n)) return;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  throw Error(ErrorKind::NoConvergence, "Jacobi iteration exceeded its sweep cap");
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void orthogonalize_against(std::vector<double>& x, const std::vector<std::vector<double>>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) {
      const double c = dot(x, b);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * b[i];
    }
}

// Canonical orthonormal basis of span(cols) built from projected e_i.
std::vector<std::vector<double>> canonical_basis(const std::vector<std::vector<double>>& cols,
                                                 std::size_t n) {
  const std::size_t k = cols.size();
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < n && out.size() < k; ++i) {
    std::vector<double> x(n, 0.0);
    for (const auto& c : cols)
      for (std::size_t r = 0; r < n; ++r) x[r] += c[i] * c[r];
    orthogonalize_against(x, out);
    const double norm = std::sqrt(dot(x, x));
    if (norm <= kBasisAcceptance) continue;
    for (double& e : x) e /= norm;
    out.push_back(std::move(x));
  }
  // Unreachable for an orthonormal input; keep the original columns then.
  if (out.size() < k) return cols;
  return out;
}

std::vector<double> require_symmetric(const Matrix& a, const TolerancePolicy& tol) {
  if (!a.is_square()) throw Error(ErrorKind::NotSquare, "spectral decomposition needs a square matrix");
  if (!is_symmetric(a, tol)) throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric");
  auto v = a.values();
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (v[i * n + j] + v[j * n + i]);
      v[i * n + j] = v[j * n + i] = m;
    }
  return v;
}

std::size_t exact_rank(const Matrix& a) {
  std::vector<Rational> m = a.rationals();
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (m[r * cols + c] != 0) {
        pivot = r;
        break;
      }
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m[pivot * cols + j], m[rank * cols + j]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r * cols + c] == 0) continue;
      Rational f = m[r * cols + c] / m[rank * cols + c];
      for (std::size_t j = c; j < cols; ++j) m[r * cols + j] -= f * m[rank * cols + j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

// ------------------------------------------------------------- spectral

std::vector<EigenCluster> cluster_eigenvalues(std::span<const double> descending,
                                              const TolerancePolicy& tol) {
  std::vector<EigenCluster> out;
  double scale = 1.0;
  for (double x : descending) scale = std::max(scale, std::abs(x));
  const double gap = tol.eig_pair_tol * scale;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= descending.size(); ++i) {
    if (i == descending.size() || descending[i - 1] - descending[i] >= gap) {
      double s = 0.0;
      for (std::size_t k = start; k < i; ++k) s += descending[k];
      out.push_back({start, i, s / static_cast<double>(i - start)});
      start = i;
    }
  }
  return out;
}

SpectralDecomposition spectral_decompose(const Matrix& a, const TolerancePolicy& tol) {
  tol.validate();
  const std::size_t n = a.rows();
  std::vector<double> work = require_symmetric(a, tol);
  std::vector<double> vecs;
  jacobi_eigen(work, vecs, n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return work[x * n + x] > work[y * n + y]; });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  std::vector<std::vector<double>> columns(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = work[order[k] * n + order[k]];
    for (std::size_t r = 0; r < n; ++r) columns[k][r] = vecs[r * n + order[k]];
  }

  std::vector<double> q(n * n, 0.0);
  for (const auto& cl : cluster_eigenvalues(out.eigenvalues, tol)) {
    std::vector<std::vector<double>> cols(columns.begin() + static_cast<long>(cl.begin),
                                          columns.begin() + static_cast<long>(cl.end));
    auto basis = canonical_basis(cols, n);
    for (std::size_t k = cl.begin; k < cl.end; ++k)
      for (std::size_t r = 0; r < n; ++r) q[r * n + k] = basis[k - cl.begin][r];
  }
  out.eigenvectors = Matrix::approx(n, n, std::move(q));
  return out;
}

// ---------------------------------------------------------------- rank

std::vector<double> singular_values(const Matrix& a) {
  // One-sided Jacobi on the columns of a (or of a^t when wide).
  const bool wide = a.cols() > a.rows();
  const Matrix m = wide ? a.transpose() : a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<double>> c(cols, std::vector<double>(rows));
  auto v = m.values();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) c[j][i] = v[i * cols + j];

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < cols; ++p)
      for (std::size_t q = p + 1; q < cols; ++q) {
        const double alpha = dot(c[p], c[p]);
        const double beta = dot(c[q], c[q]);
        const double gamma = dot(c[p], c[q]);
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const double x = c[p][i], y = c[q][i];
          c[p][i] = cs * x - sn * y;
          c[q][i] = sn * x + cs * y;
        }
      }
    if (!rotated) break;
    if (sweep == kMaxJacobiSweeps - 1)
      throw Error(ErrorKind::NoConvergence, "one-sided Jacobi exceeded its sweep cap");
  }
  std::vector<double> sv(cols);
  for (std::size_t j = 0; j < cols; ++j) sv[j] = std::sqrt(dot(c[j], c[j]));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

std::size_t numeric_rank(const Matrix& a, const TolerancePolicy& tol) {
  tol.validate();
  if (a.empty()) return 0;
  if (a.is_exact()) return exact_rank(a);
  auto sv = singular_values(a);
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double cut = tol.rank_tol * sv.front();
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [&](double s) { return s > cut; }));
}

// -------------------------------------------------------------- random

GaussianSource::GaussianSource(std::uint64_t seed) : engine_(splitmix64(seed)) {}

GaussianSource::GaussianSource(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 1))) {}

double GaussianSource::uniform() {
  // 53 random bits, shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianSource::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

std::vector<double> GaussianSource::normal_vector(std::size_t n) {
  std::vector<double> x(n);
  for (auto& e : x) e = normal();
  return x;
}

std::vector<double> GaussianSource::unit_vector(std::size_t n) {
  for (;;) {
    auto x = normal_vector(n);
    const double norm = std::sqrt(dot(x, x));
    if (norm < 1e-12) continue;
    for (auto& e : x) e /= norm;
    return x;
  }
}

Matrix random_orthogonal(std::size_t m, std::uint64_t seed) {
  GaussianSource rng(seed);
  std::vector<std::vector<double>> basis;
  while (basis.size() < m) {
    auto x = rng.normal_vector(m);
    orthogonalize_against(x, basis);
    const double norm = std::sqrt(dot(x, x));
    if (norm < 1e-8) continue;
    for (auto& e : x) e /= norm;
    basis.push_back(std::move(x));
  }
  std::vector<double> q(m * m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) q[i * m + j] = basis[j][i];
  return Matrix::approx(m, m, std::move(q));
}

// --------------------------------------------------------- null spaces

Matrix null_space_from_gram(const Matrix& gram, double relative_cut) {
  auto sd = spectral_decompose(gram, TolerancePolicy{1e-9, 1e-12, 1e-9});
  const std::size_t n = gram.rows();
  const double top = std::max(std::abs(sd.eigenvalues.front()), std::abs(sd.eigenvalues.back()));
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(sd.eigenvalues[k]) <= relative_cut * std::max(top, 1e-300)) keep.push_back(k);
  if (top == 0.0) {
    keep.resize(n);
    std::iota(keep.begin(), keep.end(), 0);
  }
  return sd.eigenvectors.columns(keep);
}

Matrix polar_orthogonal(const Matrix& x, double min_singular) {
  const std::size_t n = x.cols();
  Matrix gram = x.transpose() * x;
  auto sd = spectral_decompose(gram, TolerancePolicy{1e-9, 1e-12, 1e-9});
  const double top = sd.eigenvalues.front();
  if (!(top > 0.0) || sd.eigenvalues.back() <= min_singular * min_singular * top) return {};
  std::vector<double> inv_sqrt(n);
  for (std::size_t k = 0; k < n; ++k) inv_sqrt[k] = 1.0 / std::sqrt(sd.eigenvalues[k]);
  const Matrix& v = sd.eigenvectors;
  Matrix root_inv = v * Matrix::approx_diagonal(inv_sqrt) * v.transpose();
  return x * root_inv;
}

}  // namespace quadmorph
