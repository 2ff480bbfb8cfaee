#include "quadmorph/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "quadmorph/error.hpp"
#include "quadmorph/generators.hpp"
#include "quadmorph/linalg.hpp"

namespace quadmorph {

bool CliffordSystem::is_exact() const {
  return std::all_of(matrices.begin(), matrices.end(), [](const Matrix& m) { return m.is_exact(); });
}

namespace clifford {

namespace {

using SparseRow = std::map<std::size_t, Rational>;

// Forward elimination over Q on sparse rows; returns the rank.
std::size_t sparse_rank(const std::vector<SparseRow>& rows) {
  std::map<std::size_t, SparseRow> pivots;
  for (SparseRow row : rows) {
    while (!row.empty()) {
      auto lead = row.begin();
      auto pivot = pivots.find(lead->first);
      if (pivot == pivots.end()) {
        const Rational inv = 1 / lead->second;
        for (auto& [col, v] : row) v *= inv;
        const std::size_t col = lead->first;
        pivots.emplace(col, std::move(row));
        break;
      }
      const Rational factor = lead->second;
      for (const auto& [col, v] : pivot->second) {
        auto it = row.find(col);
        if (it == row.end()) {
          row.emplace(col, -factor * v);
        } else {
          it->second -= factor * v;
          if (it->second == 0) row.erase(it);
        }
      }
    }
  }
  return pivots.size();
}

// Index map for unknowns S_ab, a <= b.
std::vector<std::size_t> upper_index(std::size_t d) {
  std::vector<std::size_t> idx(d * d);
  std::size_t k = 0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) idx[a * d + b] = idx[b * d + a] = k++;
  return idx;
}

std::size_t exact_commutant_dimension(const CliffordSystem& cs) {
  const std::size_t d = cs.two_m;
  const auto idx = upper_index(d);
  const std::size_t unknowns = d * (d + 1) / 2;
  std::vector<SparseRow> rows;
  for (const auto& p : cs.matrices) {
    const auto& q = p.rationals();
    // (S P - P S)_xy for x < y; the map is skew so the rest is redundant.
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = x + 1; y < d; ++y) {
        SparseRow row;
        auto add = [&](std::size_t col, const Rational& v) {
          if (v == 0) return;
          auto it = row.find(col);
          if (it == row.end()) {
            row.emplace(col, v);
          } else {
            it->second += v;
            if (it->second == 0) row.erase(it);
          }
        };
        for (std::size_t c = 0; c < d; ++c) {
          add(idx[x * d + c], q[c * d + y]);
          add(idx[c * d + y], -q[x * d + c]);
        }
        if (!row.empty()) rows.push_back(std::move(row));
      }
  }
  return unknowns - sparse_rank(rows);
}

std::size_t approx_commutant_dimension(const CliffordSystem& cs) {
  const std::size_t d = cs.two_m;
  const auto idx = upper_index(d);
  const std::size_t unknowns = d * (d + 1) / 2;
  std::vector<double> gram(unknowns * unknowns, 0.0);
  std::vector<double> row(unknowns);
  for (const auto& p : cs.matrices) {
    const auto q = p.values();
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = x + 1; y < d; ++y) {
        std::fill(row.begin(), row.end(), 0.0);
        for (std::size_t c = 0; c < d; ++c) {
          row[idx[x * d + c]] += q[c * d + y];
          row[idx[c * d + y]] -= q[x * d + c];
        }
        for (std::size_t i = 0; i < unknowns; ++i) {
          if (row[i] == 0.0) continue;
          for (std::size_t j = 0; j < unknowns; ++j) gram[i * unknowns + j] += row[i] * row[j];
        }
      }
  }
  return null_space_from_gram(Matrix::approx(unknowns, unknowns, std::move(gram)), 1e-10).cols();
}

std::vector<double> sorted_spectrum(const Matrix& p, const TolerancePolicy& tol) {
  return spectral_decompose(p, tol).eigenvalues;
}

Matrix intertwiner_gram(const std::vector<Matrix>& ja, const std::vector<Matrix>& jb, std::size_t m) {
  const std::size_t u = m * m;
  std::vector<double> gram(u * u, 0.0);
  std::vector<double> k(u * u);
  for (std::size_t t = 0; t < ja.size(); ++t) {
    const auto a = ja[t].values();
    const auto b = jb[t].values();
    std::fill(k.begin(), k.end(), 0.0);
    // Row (r, c) of theta J^a - J^b theta.
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        double* row = &k[(r * m + c) * u];
        for (std::size_t s = 0; s < m; ++s) {
          row[r * m + s] += a[s * m + c];
          row[s * m + c] -= b[r * m + s];
        }
      }
    for (std::size_t row = 0; row < u; ++row) {
      const double* kr = &k[row * u];
      for (std::size_t i = 0; i < u; ++i) {
        if (kr[i] == 0.0) continue;
        double* g = &gram[i * u];
        for (std::size_t j = 0; j < u; ++j) g[j] += kr[i] * kr[j];
      }
    }
  }
  return Matrix::approx(u, u, std::move(gram));
}

// Standard representation with the first tau normalized to the identity.
struct Normalized {
  Matrix change;
  std::vector<Matrix> skews;
};

Normalized normalized_standard(const CliffordSystem& cs, const TolerancePolicy& tol) {
  auto rep = to_standard_representation(cs, tol);
  const std::size_t m = rep.taus.m;
  const Matrix& t1 = rep.taus.matrices.front();
  Matrix lift = block_diagonal(Matrix::identity(m), t1);
  Normalized out{lift * rep.change_of_basis, {}};
  for (std::size_t i = 1; i < rep.taus.matrices.size(); ++i)
    out.skews.push_back(rep.taus.matrices[i] * t1.transpose());
  return out;
}

}  // namespace

CliffordSystem verify_clifford(const std::vector<Matrix>& candidate, const TolerancePolicy& tol) {
  tol.validate();
  if (candidate.empty()) throw Error(ErrorKind::ShapeMismatch, "a Clifford system needs at least one member");
  const std::size_t d = candidate.front().rows();
  for (const auto& p : candidate)
    if (!p.is_square() || p.rows() != d || d == 0)
      throw Error(ErrorKind::ShapeMismatch, "members must be square and of equal size");
  if (d % 2 != 0) throw Error(ErrorKind::OddDimension, "ambient dimension must be even");
  for (std::size_t i = 0; i < candidate.size(); ++i)
    if (!is_symmetric(candidate[i], tol))
      throw Error(ErrorKind::NotSymmetric, "member " + std::to_string(i + 1) + " is not symmetric", {i + 1});

  const Matrix id = Matrix::identity(d);
  for (std::size_t i = 0; i < candidate.size(); ++i)
    for (std::size_t j = i; j < candidate.size(); ++j) {
      Matrix r = candidate[i] * candidate[j];
      if (i == j) {
        r = r - id;  // P_i^2 = I
      } else {
        r = r + candidate[j] * candidate[i];
      }
      if (!residual_ok(r, d, tol)) {
        std::ostringstream os;
        os << "P_" << i + 1 << " P_" << j + 1 << " + P_" << j + 1 << " P_" << i + 1
           << " != " << (i == j ? "2I" : "0");
        throw Error(ErrorKind::AnticommutationViolated, os.str(), {i + 1, j + 1},
                    relative_residual(r.to_approx(), d));
      }
    }
  return CliffordSystem{d, candidate.size(), candidate};
}

std::size_t minimal_domain_dimension(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::UnsupportedDimension, "n must be positive");
  return generators::skew_family_dimension(n - 1);
}

CliffordSystem construct_irreducible(std::size_t n) {
  const std::size_t m = minimal_domain_dimension(n);
  std::vector<Matrix> taus{Matrix::identity(m)};
  for (auto& j : generators::skew_family(n - 1)) taus.push_back(std::move(j));

  const Matrix id = Matrix::identity(m);
  const Matrix zero(m, m);
  std::vector<Matrix> ps{block_matrix(id, zero, zero, -id)};
  for (const auto& t : taus) ps.push_back(block_matrix(zero, t, t.transpose(), zero));
  return CliffordSystem{2 * m, n + 1, std::move(ps)};
}

CliffordSystem direct_sum(const CliffordSystem& a, const CliffordSystem& b) {
  if (a.n != b.n) throw Error(ErrorKind::ArityMismatch, "direct sum needs systems with the same number of members");
  CliffordSystem out{a.two_m + b.two_m, a.n, {}};
  for (std::size_t i = 0; i < a.n; ++i) out.matrices.push_back(block_diagonal(a.matrices[i], b.matrices[i]));
  return out;
}

StandardRepresentation to_standard_representation(const CliffordSystem& cs, const TolerancePolicy& tol) {
  if (cs.n < 2) throw Error(ErrorKind::ArityMismatch, "standard representation needs at least two members");
  const std::size_t d = cs.two_m;
  const std::size_t m = d / 2;
  const Matrix& p1 = cs.matrices.front();

  const Matrix id = Matrix::identity(m);
  const Matrix standard = block_matrix(id, Matrix(m, m), Matrix(m, m), -id);
  if (cs.is_exact() && p1 == standard) {
    OSystem taus{m, cs.n - 1, {}};
    for (std::size_t i = 1; i < cs.n; ++i) taus.matrices.push_back(cs.matrices[i].block(0, m, m, m));
    return {Matrix::identity(d), std::move(taus)};
  }

  auto sd = spectral_decompose(p1, tol);
  const auto positives = static_cast<std::size_t>(
      std::count_if(sd.eigenvalues.begin(), sd.eigenvalues.end(), [](double x) { return x > 0; }));
  bool unit = std::all_of(sd.eigenvalues.begin(), sd.eigenvalues.end(), [&](double x) {
    return std::abs(std::abs(x) - 1.0) <= std::max(tol.eig_pair_tol, 1e3 * tol.identity_tol);
  });
  if (positives != m || !unit)
    throw Error(ErrorKind::UnbalancedEigenspaces,
                "the +1 and -1 eigenspaces of P_1 differ in dimension (" + std::to_string(positives) +
                    " vs " + std::to_string(d - positives) + ")");

  Matrix a = sd.eigenvectors.transpose();  // rows: +1 basis, then -1 basis
  OSystem taus{m, cs.n - 1, {}};
  for (std::size_t i = 1; i < cs.n; ++i) {
    Matrix conj = a * cs.matrices[i] * a.transpose();
    taus.matrices.push_back(conj.block(0, m, m, m));
  }
  return {std::move(a), std::move(taus)};
}

std::size_t commutant_dimension(const CliffordSystem& cs, const TolerancePolicy& tol) {
  tol.validate();
  if (cs.is_exact()) return exact_commutant_dimension(cs);
  return approx_commutant_dimension(cs);
}

bool is_irreducible(const CliffordSystem& cs, const TolerancePolicy& tol) {
  return commutant_dimension(cs, tol) == 1;
}

double product_trace(const CliffordSystem& cs) {
  Matrix prod = cs.matrices.front();
  for (std::size_t i = 1; i < cs.matrices.size(); ++i) prod = prod * cs.matrices[i];
  return prod.trace_value();
}

double conjugation_residual(const Matrix& a, const std::vector<Matrix>& from, const std::vector<Matrix>& to) {
  double worst = 0.0;
  const Matrix at = a.transpose();
  for (std::size_t i = 0; i < from.size(); ++i) {
    Matrix r = a * from[i] * at - to[i];
    worst = std::max(worst, relative_residual(r.to_approx(), a.rows()));
  }
  return worst;
}

EquivalenceVerdict algebraically_equivalent(const CliffordSystem& a, const CliffordSystem& b,
                                            const TolerancePolicy& tol, std::uint64_t seed) {
  tol.validate();
  if (a.two_m != b.two_m || a.n != b.n)
    throw Error(ErrorKind::ShapeMismatch, "systems live in different C(2m, n)");
  const double d = static_cast<double>(a.two_m);

  for (std::size_t i = 0; i < a.n; ++i) {
    auto sa = sorted_spectrum(a.matrices[i], tol);
    auto sb = sorted_spectrum(b.matrices[i], tol);
    for (std::size_t k = 0; k < sa.size(); ++k)
      if (std::abs(sa[k] - sb[k]) > 1e3 * tol.eig_pair_tol) return {Equivalence::NotEquivalent, std::nullopt, 0.0};
  }
  if (std::abs(product_trace(a) - product_trace(b)) > 1e-6 * d)
    return {Equivalence::NotEquivalent, std::nullopt, 0.0};
  if (commutant_dimension(a, tol) != commutant_dimension(b, tol))
    return {Equivalence::NotEquivalent, std::nullopt, 0.0};

  auto accept = [&](const Matrix& cert) -> EquivalenceVerdict {
    const double res = conjugation_residual(cert, a.matrices, b.matrices);
    if (res <= tol.identity_tol) return {Equivalence::Equivalent, cert, res};
    return {Equivalence::Unknown, std::nullopt, res};
  };

  if (a.n == 1) {
    auto ea = spectral_decompose(a.matrices.front(), tol);
    auto eb = spectral_decompose(b.matrices.front(), tol);
    return accept(eb.eigenvectors * ea.eigenvectors.transpose());
  }

  const Normalized na = normalized_standard(a, tol);
  const Normalized nb = normalized_standard(b, tol);
  const std::size_t m = a.two_m / 2;

  auto certificate_for = [&](const Matrix& theta) {
    return nb.change.transpose() * block_diagonal(theta, theta) * na.change;
  };
  if (na.skews.empty()) return accept(certificate_for(Matrix::identity(m)));

  auto theta = find_intertwiner(na.skews, nb.skews, tol, seed);
  if (!theta) return {Equivalence::Unknown, std::nullopt, 0.0};
  return accept(certificate_for(*theta));
}

std::optional<Matrix> find_intertwiner(const std::vector<Matrix>& from, const std::vector<Matrix>& to,
                                       const TolerancePolicy& tol, std::uint64_t seed) {
  if (from.size() != to.size()) throw Error(ErrorKind::ArityMismatch, "families differ in length");
  if (from.empty()) return std::nullopt;
  const std::size_t m = from.front().rows();
  const Matrix null = null_space_from_gram(intertwiner_gram(from, to, m), 1e-10);
  if (null.cols() == 0) return std::nullopt;

  const auto nv = null.values();
  for (std::uint64_t attempt = 0; attempt < 4; ++attempt) {
    GaussianSource rng(seed, attempt);
    const auto coeff = rng.normal_vector(null.cols());
    std::vector<double> x(m * m, 0.0);
    for (std::size_t r = 0; r < m * m; ++r)
      for (std::size_t c = 0; c < null.cols(); ++c) x[r] += nv[r * null.cols() + c] * coeff[c];
    Matrix theta = polar_orthogonal(Matrix::approx(m, m, std::move(x)));
    if (theta.empty()) continue;
    if (conjugation_residual(theta, from, to) <= tol.identity_tol) return theta;
  }
  return std::nullopt;
}

}  // namespace clifford
}  // namespace quadmorph
