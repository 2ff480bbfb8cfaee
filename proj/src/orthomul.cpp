#include "quadmorph/orthomul.hpp"

#include <algorithm>
#include <cmath>

#include "quadmorph/error.hpp"
#include "quadmorph/generators.hpp"
#include "quadmorph/linalg.hpp"
#include "quadmorph/osystem.hpp"

namespace quadmorph::orthomul {

namespace {

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

bool OrthogonalMultiplication::is_exact() const {
  return std::all_of(slices.begin(), slices.end(), [](const Matrix& m) { return m.is_exact(); });
}

OrthogonalMultiplication from_osystem(const OSystem& os) {
  return OrthogonalMultiplication{os.n, os.m, os.m, os.matrices};
}

OSystem to_osystem(const OrthogonalMultiplication& mu, const TolerancePolicy& tol) {
  if (mu.q != mu.n_out) throw Error(ErrorKind::NotSquare, "slices must be square to form an O-system");
  return osystem::verify_osystem(mu.slices, tol);
}

std::vector<double> apply(const OrthogonalMultiplication& mu, const std::vector<double>& x,
                          const std::vector<double>& y) {
  if (x.size() != mu.p || y.size() != mu.q)
    throw Error(ErrorKind::DimensionMismatch, "argument sizes do not match the multiplication");
  std::vector<double> out(mu.n_out, 0.0);
  for (std::size_t i = 0; i < mu.p; ++i) {
    if (x[i] == 0.0) continue;
    const auto s = quadmorph::apply(mu.slices[i], y);
    for (std::size_t k = 0; k < mu.n_out; ++k) out[k] += x[i] * s[k];
  }
  return out;
}

OrthogonalMultiplication standard_multiplication(std::size_t n) {
  OrthogonalMultiplication mu{n, n, n, {}};
  for (std::size_t u = 0; u < n; ++u) mu.slices.push_back(generators::left_multiplication(n, u));
  return mu;
}

QuadraticHarmonicMorphism hopf_construction(const OrthogonalMultiplication& mu) {
  if (mu.p != mu.q) throw Error(ErrorKind::ShapeMismatch, "the Hopf construction needs p = q");
  const std::size_t p = mu.p;
  const Matrix id = Matrix::identity(p);
  const Matrix zero(p, p);
  QuadraticHarmonicMorphism h{2 * p, mu.n_out + 1, {block_matrix(id, zero, zero, -id)}};
  // 2 mu(x, y)_k = 2 x^t M_k y with (M_k)_ij = (slice_i)_kj.
  for (std::size_t k = 0; k < mu.n_out; ++k) {
    Matrix mk(p, p);
    if (!mu.is_exact()) mk = Matrix::approx_zeros(p, p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) mk.set(i, j, mu.slices[i].at(k, j));
    h.components.push_back(block_matrix(zero, mk, mk.transpose(), zero));
  }
  return h;
}

OrthomulReport verify_orthomul(const OrthogonalMultiplication& mu, std::size_t samples,
                               std::uint64_t seed, const TolerancePolicy& tol) {
  tol.validate();
  OrthomulReport report;
  report.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    GaussianSource rng(seed, s);
    const auto x = rng.unit_vector(mu.p);
    const auto y = rng.unit_vector(mu.q);
    report.max_defect = std::max(report.max_defect, std::abs(norm(apply(mu, x, y)) - 1.0));
  }

  if (mu.q == mu.n_out && mu.is_exact()) {
    report.exact_path = true;
    try {
      osystem::verify_osystem(mu.slices, tol);
      report.holds = true;
      report.max_defect = 0.0;  // the slice relations make the norm identity exact
    } catch (const Error&) {
      report.holds = false;
    }
    return report;
  }
  report.holds = report.max_defect <= tol.identity_tol;
  return report;
}

}  // namespace quadmorph::orthomul
