#include "quadmorph/osystem.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "quadmorph/clifford.hpp"
#include "quadmorph/error.hpp"
#include "quadmorph/generators.hpp"

namespace quadmorph {

bool OSystem::is_exact() const {
  return std::all_of(matrices.begin(), matrices.end(), [](const Matrix& m) { return m.is_exact(); });
}

namespace osystem {

OSystem verify_osystem(const std::vector<Matrix>& candidate, const TolerancePolicy& tol) {
  tol.validate();
  if (candidate.empty()) throw Error(ErrorKind::ShapeMismatch, "an O-system needs at least one member");
  const std::size_t m = candidate.front().rows();
  for (const auto& t : candidate)
    if (!t.is_square() || t.rows() != m || m == 0)
      throw Error(ErrorKind::ShapeMismatch, "members must be square and of equal size");
  for (std::size_t i = 0; i < candidate.size(); ++i)
    if (!is_orthogonal(candidate[i], tol))
      throw Error(ErrorKind::NotOrthogonal, "member " + std::to_string(i + 1) + " is not orthogonal", {i + 1});

  std::vector<Matrix> transposed;
  for (const auto& t : candidate) transposed.push_back(t.transpose());
  for (std::size_t i = 0; i < candidate.size(); ++i)
    for (std::size_t j = i + 1; j < candidate.size(); ++j) {
      const Matrix r = transposed[i] * candidate[j] + transposed[j] * candidate[i];
      if (!residual_ok(r, m, tol)) {
        std::ostringstream os;
        os << "tau_" << i + 1 << "^t tau_" << j + 1 << " + tau_" << j + 1 << "^t tau_" << i + 1 << " != 0";
        if (m % 2 == 1) os << " (no O-system with two or more members exists on an odd-dimensional space)";
        throw Error(ErrorKind::AnticommutationViolated, os.str(), {i + 1, j + 1},
                    relative_residual(r.to_approx(), m));
      }
    }
  return OSystem{m, candidate.size(), candidate};
}

SigmaDecomposition hurwitz_radon(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::UnsupportedDimension, "m must be positive");
  const auto e = static_cast<std::size_t>(std::countr_zero(m));
  SigmaDecomposition out;
  out.m = m;
  out.r = ((m >> e) - 1) / 2;
  out.c = e % 4;
  out.d = e / 4;
  out.sigma = (std::size_t{1} << out.c) + 8 * out.d;
  return out;
}

OSystem construct_range_maximal(std::size_t m) {
  const SigmaDecomposition hr = hurwitz_radon(m);
  const std::size_t copies = 2 * hr.r + 1;
  const Matrix id = Matrix::identity(copies);
  OSystem out{m, hr.sigma, {}};
  out.matrices.push_back(Matrix::identity(m));
  for (const auto& j : generators::skew_family(hr.sigma - 1)) out.matrices.push_back(kronecker(id, j));
  return out;
}

OSystem from_clifford(const CliffordSystem& cs, const TolerancePolicy& tol) {
  return clifford::to_standard_representation(cs, tol).taus;
}

CliffordSystem to_clifford(const OSystem& os) {
  const std::size_t m = os.m;
  const Matrix id = Matrix::identity(m);
  const Matrix zero(m, m);
  CliffordSystem out{2 * m, os.n + 1, {block_matrix(id, zero, zero, -id)}};
  for (const auto& t : os.matrices) out.matrices.push_back(block_matrix(zero, t, t.transpose(), zero));
  return out;
}

OSystem transpose_system(const OSystem& os) {
  OSystem out{os.m, os.n, {}};
  for (const auto& t : os.matrices) out.matrices.push_back(t.transpose());
  return out;
}

OSystem sub_system(const OSystem& os, const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw Error(ErrorKind::BadIndices, "no members selected");
  std::set<std::size_t> seen;
  OSystem out{os.m, indices.size(), {}};
  for (std::size_t i : indices) {
    if (i >= os.n || !seen.insert(i).second)
      throw Error(ErrorKind::BadIndices, "member index " + std::to_string(i + 1) + " is repeated or out of range",
                  {i + 1});
    out.matrices.push_back(os.matrices[i]);
  }
  return out;
}

OSystem direct_sum(const OSystem& a, const OSystem& b) {
  if (a.n != b.n) throw Error(ErrorKind::ArityMismatch, "direct sum needs systems with the same number of members");
  OSystem out{a.m + b.m, a.n, {}};
  for (std::size_t i = 0; i < a.n; ++i) out.matrices.push_back(block_diagonal(a.matrices[i], b.matrices[i]));
  return out;
}

OSystem normalize_first(const OSystem& os) {
  const Matrix t1 = os.matrices.front().transpose();
  OSystem out{os.m, os.n, {}};
  for (const auto& t : os.matrices) out.matrices.push_back(t * t1);
  return out;
}

}  // namespace osystem
}  // namespace quadmorph
