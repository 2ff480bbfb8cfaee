#include "quadmorph/qhm.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "quadmorph/clifford.hpp"
#include "quadmorph/error.hpp"
#include "quadmorph/linalg.hpp"
#include "quadmorph/osystem.hpp"

namespace quadmorph {

bool QuadraticHarmonicMorphism::is_exact() const {
  return std::all_of(components.begin(), components.end(), [](const Matrix& m) { return m.is_exact(); });
}

namespace qhm {

namespace {

// Exact copy of a float matrix whose entries are all 0 or +-1.
Matrix exactify(const Matrix& a) {
  if (a.is_exact()) return a;
  const auto v = a.values();
  std::vector<Rational> q(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0 && v[i] != 1.0 && v[i] != -1.0) return a;
    q[i] = static_cast<long>(v[i]);
  }
  return Matrix::exact(a.rows(), a.cols(), std::move(q));
}

// Exact rational for an integral float, otherwise the float itself.
Scalar exact_if_integral(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x)) && std::abs(r) < 1e15)
    return Scalar(static_cast<long>(r));
  return Scalar(x);
}

Matrix conjugate(const Matrix& w, const Matrix& a) { return w * a * w.transpose(); }

Matrix rows_of(const Matrix& a, const std::vector<std::size_t>& rows) {
  Matrix t = a.transpose();
  return t.columns(rows).transpose();
}

// Squared-eigenvalue scale |A|_F^2 / m used to make residuals relative.
double square_scale(const Matrix& a) {
  const double f = a.frobenius_norm();
  return std::max(f * f / static_cast<double>(a.rows()), 1e-300);
}

bool small_relative(const Matrix& r, std::size_t n, double scale, const TolerancePolicy& tol) {
  if (r.is_exact()) return r.is_zero();
  return relative_residual(r, n) <= tol.identity_tol * scale;
}

void check_shape(const std::vector<Matrix>& comps) {
  if (comps.empty()) throw Error(ErrorKind::ShapeMismatch, "a quadratic map needs at least one component");
  const std::size_t m = comps.front().rows();
  for (const auto& a : comps)
    if (!a.is_square() || a.rows() != m || m == 0)
      throw Error(ErrorKind::ShapeMismatch, "components must be square and of equal size");
}

double component_value(const std::vector<double>& a, std::size_t m, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) row += a[i * m + j] * x[j];
    s += x[i] * row;
  }
  return s;
}

struct Spectrum {
  SpectralDecomposition sd;
  std::size_t half = 0;  // number of positive eigenvalues
  std::vector<EigenCluster> positive;  // clusters of the positive part, descending
};

Spectrum symmetric_spectrum(const Matrix& a, std::size_t q_rank, const TolerancePolicy& tol) {
  Spectrum s{spectral_decompose(a, tol), q_rank / 2, {}};
  const auto& ev = s.sd.eigenvalues;
  const std::size_t m = ev.size();
  const double scale = std::max(1.0, std::max(std::abs(ev.front()), std::abs(ev.back())));
  for (std::size_t k = 0; k < m; ++k)
    if (std::abs(ev[k] + ev[m - 1 - k]) > tol.eig_pair_tol * scale)
      throw Error(ErrorKind::AsymmetricSpectrum, "component spectrum is not symmetric about 0");
  if (s.half > 0 && !(ev[s.half - 1] > 0.0))
    throw Error(ErrorKind::RankMismatch, "rank and spectrum disagree");
  s.positive = cluster_eigenvalues(std::span<const double>(ev.data(), s.half), tol);
  return s;
}

std::size_t common_rank(const QHM& phi, const TolerancePolicy& tol) {
  const std::size_t q = numeric_rank(phi.components.front(), tol);
  for (std::size_t a = 1; a < phi.n; ++a)
    if (numeric_rank(phi.components[a], tol) != q)
      throw Error(ErrorKind::RankMismatch, "components have different ranks", {1, a + 1});
  if (q == 0) throw Error(ErrorKind::Degenerate, "all components vanish");
  if (q % 2 != 0) throw Error(ErrorKind::OddRank, "component rank " + std::to_string(q) + " is odd");
  return q;
}

}  // namespace

// ------------------------------------------------------------ verification

SampledVerdict sampled_check(const std::vector<Matrix>& components, std::size_t samples, std::uint64_t seed) {
  check_shape(components);
  const std::size_t m = components.front().rows();
  const std::size_t n = components.size();
  std::vector<std::vector<double>> mats;
  double norm_sum = 0.0;
  for (const auto& a : components) {
    mats.push_back(a.values());
    norm_sum += a.frobenius_norm();
  }

  SampledVerdict v;
  v.samples = samples;
  std::vector<std::vector<double>> grads(n, std::vector<double>(m));
  for (std::size_t s = 0; s < samples; ++s) {
    GaussianSource rng(seed, s);
    const auto x = rng.normal_vector(m);
    double xx = 0.0;
    for (double e : x) xx += e * e;
    for (std::size_t a = 0; a < n; ++a) {
      const double centre = component_value(mats[a], m, x);
      double lap = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        auto xp = x, xm = x;
        xp[i] += 1.0;
        xm[i] -= 1.0;
        const double fp = component_value(mats[a], m, xp);
        const double fm = component_value(mats[a], m, xm);
        grads[a][i] = 0.5 * (fp - fm);
        lap += fp - 2.0 * centre + fm;
      }
      const double lap_ref = norm_sum * (xx + 1.0) * static_cast<double>(m);
      const double lap_defect = std::abs(lap) / std::max(lap_ref, 1e-300);
      v.max_defect = std::max(v.max_defect, lap_defect);
      if (lap_defect > 1e-10) v.harmonic = false;
    }
    double lambda2 = 0.0;
    for (std::size_t a = 0; a < n; ++a)
      for (double g : grads[a]) lambda2 += g * g;
    lambda2 /= static_cast<double>(n);
    if (lambda2 == 0.0) continue;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += grads[a][i] * grads[b][i];
        const double defect = std::abs(dot - (a == b ? lambda2 : 0.0)) / lambda2;
        v.max_defect = std::max(v.max_defect, defect);
        if (defect > 1e-8) v.conformal = false;
      }
  }
  return v;
}

QHM verify_qhm(const std::vector<Matrix>& candidate, const TolerancePolicy& tol, std::size_t samples,
               std::uint64_t seed) {
  tol.validate();
  check_shape(candidate);
  const std::size_t m = candidate.front().rows();
  const std::size_t n = candidate.size();
  for (std::size_t a = 0; a < n; ++a)
    if (!is_symmetric(candidate[a], tol))
      throw Error(ErrorKind::NotSymmetric, "component " + std::to_string(a + 1) + " is not symmetric", {a + 1});
  if (std::all_of(candidate.begin(), candidate.end(), [](const Matrix& a) { return a.max_abs() == 0.0; }))
    throw Error(ErrorKind::Degenerate, "all components vanish");

  for (std::size_t a = 0; a < n; ++a) {
    const Matrix& c = candidate[a];
    const bool ok = c.is_exact()
                        ? c.trace().rational() == 0
                        : std::abs(c.trace_value()) <=
                              tol.identity_tol * std::sqrt(static_cast<double>(m)) * std::max(c.frobenius_norm(), 1e-300);
    if (!ok) {
      std::ostringstream os;
      os << "component " << a + 1 << " has trace " << c.trace().to_string() << " (not harmonic)";
      throw Error(ErrorKind::NotHarmonic, os.str(), {a + 1}, c.trace_value());
    }
  }

  const double scale = square_scale(candidate.front());
  std::vector<Matrix> squares;
  for (const auto& a : candidate) squares.push_back(a * a);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Matrix r = a == b ? squares[a] - squares[0] : candidate[a] * candidate[b] + candidate[b] * candidate[a];
      if (!small_relative(r, m, scale, tol)) {
        std::ostringstream os;
        if (a == b)
          os << "A_" << a + 1 << "^2 != A_1^2";
        else
          os << "A_" << a + 1 << " A_" << b + 1 << " + A_" << b + 1 << " A_" << a + 1 << " != 0";
        os << " (not horizontally conformal)";
        throw Error(ErrorKind::NotHorizontallyConformal, os.str(), {a == b ? 1 : a + 1, b + 1},
                    relative_residual(r.to_approx(), m) / scale);
      }
    }

  const SampledVerdict sv = sampled_check(candidate, samples, seed);
  if (!sv.passed())
    throw Error(ErrorKind::SampleDisagreement, "matrix criteria hold but the sampled check failed", {},
                sv.max_defect);
  return QHM{m, n, candidate};
}

std::vector<double> evaluate(const QHM& phi, const std::vector<double>& x) {
  if (x.size() != phi.m) throw Error(ErrorKind::DimensionMismatch, "point has the wrong dimension");
  std::vector<double> out;
  for (const auto& a : phi.components) out.push_back(quadratic_form(a, x));
  return out;
}

QHM from_clifford(const CliffordSystem& cs) { return QHM{cs.two_m, cs.n, cs.matrices}; }

QHM direct_sum(const QHM& a, const QHM& b) {
  if (a.n != b.n) throw Error(ErrorKind::ArityMismatch, "direct sum needs maps with the same range dimension");
  QHM out{a.m + b.m, a.n, {}};
  for (std::size_t i = 0; i < a.n; ++i) out.components.push_back(block_diagonal(a.components[i], b.components[i]));
  return out;
}

QHM scaled(const QHM& phi, const Scalar& factor) {
  QHM out{phi.m, phi.n, {}};
  for (const auto& a : phi.components) out.components.push_back(a.scaled(factor));
  return out;
}

// ------------------------------------------------------------ normal form

NormalForm normal_form(const QHM& phi, const TolerancePolicy& tol) {
  tol.validate();
  const std::size_t m = phi.m;
  const std::size_t q = common_rank(phi, tol);
  if (q != m) throw Error(ErrorKind::QSingular, "normal form needs a Q-nonsingular map (rank " +
                                                     std::to_string(q) + " < " + std::to_string(m) + ")");
  const Spectrum s = symmetric_spectrum(phi.components.front(), q, tol);
  const std::size_t k = s.half;
  const auto& ev = s.sd.eigenvalues;
  const Matrix& vecs = s.sd.eigenvectors;

  // The -lambda cluster of a positive cluster [b, e) sits at [m - e, m - b).
  std::vector<std::size_t> plus, minus;
  std::vector<double> dvals;
  for (const auto& c : s.positive) {
    const std::size_t nb = m - c.end, ne = m - c.begin;
    const auto neg = cluster_eigenvalues(std::span<const double>(ev.data() + nb, ne - nb), tol);
    if (neg.size() != 1)
      throw Error(ErrorKind::AsymmetricSpectrum, "negative eigenvalues do not mirror the positive ones");
    for (std::size_t i = c.begin; i < c.end; ++i) {
      plus.push_back(i);
      dvals.push_back(c.mean);
    }
    for (std::size_t i = nb; i < ne; ++i) minus.push_back(i);
  }
  std::vector<std::size_t> order = plus;
  order.insert(order.end(), minus.begin(), minus.end());
  Matrix g = vecs.columns(order).transpose();
  if (phi.is_exact()) g = exactify(g);

  NormalForm nf;
  nf.change_of_coords = g;
  const Matrix first = conjugate(g, phi.components.front());
  if (first.is_exact()) {
    nf.d = first.block(0, 0, k, k);
  } else {
    nf.d = Matrix::approx_diagonal(dvals);
  }
  for (std::size_t a = 1; a < phi.n; ++a) nf.b.push_back(conjugate(g, phi.components[a]).block(0, k, k, k));
  return nf;
}

double normal_form_residual(const NormalForm& nf) {
  const std::size_t k = nf.d.rows();
  const double scale = square_scale(nf.d);
  const Matrix d2 = nf.d * nf.d;
  double worst = 0.0;
  auto take = [&](const Matrix& r) { worst = std::max(worst, relative_residual(r.to_approx(), k) / scale); };
  for (std::size_t i = 0; i < nf.b.size(); ++i) {
    const Matrix& b = nf.b[i];
    worst = std::max(worst, relative_residual((nf.d * b - b * nf.d).to_approx(), k) / std::sqrt(scale));
    take(b.transpose() * b - d2);
    for (std::size_t j = i + 1; j < nf.b.size(); ++j) take(b.transpose() * nf.b[j] + nf.b[j].transpose() * b);
  }
  return worst;
}

std::vector<Matrix> reassemble(const NormalForm& nf) {
  const std::size_t k = nf.d.rows();
  const Matrix zero = nf.d.is_exact() ? Matrix(k, k) : Matrix::approx_zeros(k, k);
  const Matrix gt = nf.change_of_coords.transpose();
  std::vector<Matrix> out{gt * block_matrix(nf.d, zero, zero, -nf.d) * nf.change_of_coords};
  for (const auto& b : nf.b) out.push_back(gt * block_matrix(zero, b, b.transpose(), zero) * nf.change_of_coords);
  return out;
}

// ------------------------------------------------------------- projection

Projection project_nonsingular(const QHM& phi, const TolerancePolicy& tol) {
  tol.validate();
  const std::size_t m = phi.m;
  const std::size_t q = common_rank(phi, tol);
  if (q == m) return {Matrix::identity(m), phi};

  // Kernel of A_1: the m - q eigenvalues of smallest magnitude.
  const auto sd = spectral_decompose(phi.components.front(), tol);
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(sd.eigenvalues[a]) < std::abs(sd.eigenvalues[b]);
  });
  std::vector<std::size_t> kernel_idx(idx.begin(), idx.begin() + static_cast<long>(m - q));
  std::sort(kernel_idx.begin(), kernel_idx.end());
  Matrix kernel = sd.eigenvectors.columns(kernel_idx);
  if (phi.is_exact()) kernel = exactify(kernel);

  for (std::size_t a = 0; a < phi.n; ++a) {
    const Matrix r = phi.components[a] * kernel;
    const double ref = std::max(phi.components[a].frobenius_norm(), 1e-300);
    const bool ok = r.is_exact() ? r.is_zero() : r.frobenius_norm() <= tol.identity_tol * ref * std::sqrt(double(m));
    if (!ok)
      throw Error(ErrorKind::SharedKernelViolated,
                  "component " + std::to_string(a + 1) + " does not vanish on the kernel of A_1", {a + 1},
                  r.frobenius_norm() / ref);
  }

  // Gram-Schmidt of e_1, e_2, ... with the kernel projected out.
  const auto kv = kernel.values();
  const std::size_t kc = kernel.cols();
  std::vector<std::vector<double>> basis;
  for (std::size_t i = 0; i < m && basis.size() < q; ++i) {
    std::vector<double> x(m, 0.0);
    x[i] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t c = 0; c < kc; ++c) {
        double dot = 0.0;
        for (std::size_t r = 0; r < m; ++r) dot += kv[r * kc + c] * x[r];
        for (std::size_t r = 0; r < m; ++r) x[r] -= dot * kv[r * kc + c];
      }
      for (const auto& b : basis) {
        double dot = 0.0;
        for (std::size_t r = 0; r < m; ++r) dot += b[r] * x[r];
        for (std::size_t r = 0; r < m; ++r) x[r] -= dot * b[r];
      }
    }
    double norm = 0.0;
    for (double e : x) norm += e * e;
    norm = std::sqrt(norm);
    if (norm <= 1e-3) continue;
    for (double& e : x) e /= norm;
    basis.push_back(std::move(x));
  }
  std::vector<double> rows;
  for (const auto& b : basis) rows.insert(rows.end(), b.begin(), b.end());
  Matrix pi = Matrix::approx(q, m, std::move(rows));
  if (phi.is_exact()) pi = exactify(pi);

  Projection out{pi, QHM{q, phi.n, {}}};
  for (const auto& a : phi.components) out.reduced.components.push_back(conjugate(pi, a));
  return out;
}

// ---------------------------------------------------------- classification

ClassificationReport classify(const QHM& phi, const TolerancePolicy& tol) {
  tol.validate();
  ClassificationReport report;
  report.q_rank = common_rank(phi, tol);
  const Spectrum s = symmetric_spectrum(phi.components.front(), report.q_rank, tol);
  report.positive_eigenvalues.assign(s.sd.eigenvalues.begin(), s.sd.eigenvalues.begin() + static_cast<long>(s.half));
  report.zero_count = phi.m - report.q_rank;
  report.is_q_nonsingular = report.q_rank == phi.m;
  report.is_umbilical = s.positive.size() == 1;

  Projection proj = project_nonsingular(phi, tol);
  const NormalForm nf = normal_form(proj.reduced, tol);
  const std::size_t k = nf.d.rows();
  const Matrix w = nf.change_of_coords * proj.projection;
  const auto dv = nf.d.values();

  // Clusters of D (descending) in normal-form coordinates.
  std::vector<double> diag(k);
  for (std::size_t i = 0; i < k; ++i) diag[i] = dv[i * k + i];
  const auto clusters = cluster_eigenvalues(diag, tol);
  const double scale = square_scale(nf.d);
  for (const auto& b : nf.b) {
    const auto bv = b.values();
    for (const auto& c : clusters)
      for (std::size_t r = c.begin; r < c.end; ++r)
        for (std::size_t col = 0; col < k; ++col) {
          if (col >= c.begin && col < c.end) continue;
          if (std::abs(bv[r * k + col]) > 1e3 * tol.identity_tol * std::sqrt(scale))
            throw Error(ErrorKind::NotHorizontallyConformal, "components do not respect the eigenspaces of A_1");
        }
  }

  std::vector<std::size_t> all_rows;
  for (const auto& c : clusters) {
    std::vector<std::size_t> rows;
    for (std::size_t r = c.begin; r < c.end; ++r) rows.push_back(r);
    for (std::size_t r = c.begin; r < c.end; ++r) rows.push_back(k + r);
    all_rows.insert(all_rows.end(), rows.begin(), rows.end());
    const Matrix wj = rows_of(w, rows);
    const Scalar lambda = phi.is_exact() && wj.is_exact() ? exact_if_integral(c.mean) : Scalar(c.mean);
    const Scalar inv = Scalar(1) / lambda;
    SplitSummand summand{c.mean, QHM{rows.size(), phi.n, {}}};
    for (const auto& a : phi.components) summand.summand.components.push_back(conjugate(wj, a).scaled(inv));
    report.splitting.push_back(std::move(summand));
  }
  report.coordinate_map = rows_of(w, all_rows);
  return report;
}

// ------------------------------------------------ single-function form

SingleFunction single_function_representation(const QHM& phi, const TolerancePolicy& tol) {
  tol.validate();
  const std::size_t m = phi.m;
  const std::size_t q = common_rank(phi, tol);
  if (q != m) throw Error(ErrorKind::QSingular, "project onto the non-kernel subspace first");
  const Spectrum s = symmetric_spectrum(phi.components.front(), q, tol);
  const std::size_t h = phi.n >= 2 ? clifford::minimal_domain_dimension(phi.n - 1) : 1;

  SingleFunction out;
  for (auto it = s.positive.rbegin(); it != s.positive.rend(); ++it) {
    const std::size_t mult = it->end - it->begin;
    if (mult % h == 0) {
      for (std::size_t j = 0; j < mult / h; ++j) out.blocks.push_back({it->mean, h});
    } else {
      out.blocks.push_back({it->mean, mult});
    }
  }

  Matrix f(0, 0);
  bool first = true;
  for (const auto& b : out.blocks) {
    const Scalar lambda = phi.is_exact() ? exact_if_integral(b.scale) : Scalar(b.scale);
    const Matrix id = Matrix::identity(b.half).scaled(lambda);
    const Matrix zero = id.is_exact() ? Matrix(b.half, b.half) : Matrix::approx_zeros(b.half, b.half);
    Matrix block = block_matrix(id, zero, zero, -id);
    f = first ? block : block_diagonal(f, block);
    first = false;
  }
  out.f_matrix = f;

  const auto fd = spectral_decompose(f, tol);
  const double top = std::max(1.0, std::abs(fd.eigenvalues.front()));
  for (std::size_t a = 0; a < phi.n; ++a) {
    const auto sd = spectral_decompose(phi.components[a], tol);
    for (std::size_t i = 0; i < m; ++i)
      if (std::abs(sd.eigenvalues[i] - fd.eigenvalues[i]) > 1e2 * tol.eig_pair_tol * top)
        throw Error(ErrorKind::RankMismatch, "component spectra differ", {1, a + 1});
    Matrix g = fd.eigenvectors * sd.eigenvectors.transpose();
    if (phi.is_exact()) g = exactify(g);
    out.rotations.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------- range extension

QHM range_extend(const QHM& phi, const TolerancePolicy& tol, std::uint64_t seed) {
  tol.validate();
  const auto report = classify(phi, tol);
  const bool minimal = phi.n >= 2 && report.is_q_nonsingular && report.is_umbilical &&
                       phi.m == 2 * clifford::minimal_domain_dimension(phi.n - 1);
  if (!minimal) throw Error(ErrorKind::NotDomainMinimal, "range extension needs a domain-minimal map");
  const std::size_t half = phi.m / 2;
  const std::size_t sigma = osystem::hurwitz_radon(half).sigma;
  if (phi.n - 1 >= sigma)
    throw Error(ErrorKind::AlreadyRangeMaximal,
                "range dimension already equals sigma(" + std::to_string(half) + ") + 1 = " + std::to_string(sigma + 1));

  const double lambda_value = report.positive_eigenvalues.front();
  const Scalar lambda = phi.is_exact() ? exact_if_integral(lambda_value) : Scalar(lambda_value);
  const QHM unit = scaled(phi, Scalar(1) / lambda);
  const CliffordSystem cs = clifford::verify_clifford(unit.components, TolerancePolicy{1e-8, tol.eig_pair_tol, tol.rank_tol});

  auto rep = clifford::to_standard_representation(cs, tol);
  const Matrix t1 = rep.taus.matrices.front();
  const Matrix change = block_diagonal(Matrix::identity(half), t1) * rep.change_of_basis;
  const OSystem normalized = osystem::normalize_first(rep.taus);
  std::vector<Matrix> skews(normalized.matrices.begin() + 1, normalized.matrices.end());

  const OSystem target = osystem::construct_range_maximal(half);
  std::vector<Matrix> canonical(target.matrices.begin() + 1, target.matrices.end());
  const std::size_t have = skews.size();

  std::optional<Matrix> theta;
  if (have == 0) {
    theta = Matrix::identity(half);
  } else {
    std::vector<Matrix> aim(canonical.begin(), canonical.begin() + static_cast<long>(have));
    theta = clifford::find_intertwiner(skews, aim, tol, seed);
    if (!theta) {
      aim.back() = -aim.back();
      theta = clifford::find_intertwiner(skews, aim, tol, seed);
    }
  }
  if (!theta)
    throw Error(ErrorKind::NotExtendable,
                "the skew members could not be aligned with the canonical range-maximal family");

  OSystem extended = normalized;
  for (std::size_t b = have; b < canonical.size(); ++b)
    extended.matrices.push_back(theta->transpose() * canonical[b] * *theta);
  extended.n = extended.matrices.size();

  const CliffordSystem standard = osystem::to_clifford(extended);
  QHM out{phi.m, standard.n, phi.components};
  const Matrix ct = change.transpose();
  for (std::size_t i = phi.n; i < standard.n; ++i)
    out.components.push_back((ct * standard.matrices[i] * change).scaled(lambda));
  try {
    return verify_qhm(out.components, TolerancePolicy{1e-8, tol.eig_pair_tol, tol.rank_tol});
  } catch (const Error& e) {
    throw Error(ErrorKind::NotExtendable, std::string("extended map failed verification: ") + e.what());
  }
}

// ---------------------------------------------------------- class counting

std::size_t count_biequivalence_classes(std::size_t n, std::size_t k) {
  if (n == 0 || k == 0) throw Error(ErrorKind::UnsupportedDimension, "n and k must be positive");
  if (n % 4 != 0) return 1;
  return std::size_t{1} << (k - 1);
}

std::size_t enumerate_sign_pattern_classes(std::size_t n, std::size_t k, const TolerancePolicy& tol) {
  if (n == 0 || k == 0) throw Error(ErrorKind::UnsupportedDimension, "n and k must be positive");
  const CliffordSystem base = clifford::construct_irreducible(n);
  CliffordSystem flipped = base;
  flipped.matrices.back() = -flipped.matrices.back();
  const QHM variants[2] = {from_clifford(base), from_clifford(flipped)};

  std::set<std::vector<int>> classes;
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << k); ++pattern) {
    QHM sum = scaled(variants[pattern & 1], Scalar(1));
    for (std::size_t j = 1; j < k; ++j)
      sum = direct_sum(sum, scaled(variants[(pattern >> j) & 1], Scalar(static_cast<long>(j + 1))));
    const auto report = classify(sum, tol);
    std::vector<int> signs;
    for (const auto& part : report.splitting) {
      const double t = clifford::product_trace(CliffordSystem{part.summand.m, part.summand.n, part.summand.components});
      signs.push_back(std::abs(t) < 0.5 ? 0 : (t > 0 ? 1 : -1));
    }
    std::vector<int> negated = signs;
    for (int& x : negated) x = -x;
    classes.insert(std::min(signs, negated));
  }
  return classes.size();
}

// ------------------------------------------------------------ isoparametric

IsoparametricReport verify_isoparametric(const Matrix& f, std::size_t samples, std::uint64_t seed,
                                         double tolerance) {
  if (!f.is_square() || f.rows() == 0) throw Error(ErrorKind::NotSquare, "F needs a square matrix");
  if (!is_symmetric(f, TolerancePolicy{})) throw Error(ErrorKind::NotSymmetric, "F needs a symmetric matrix");
  const std::size_t m = f.rows();
  const double fro = f.frobenius_norm();
  if (fro == 0.0) throw Error(ErrorKind::Degenerate, "F vanishes");
  const double scale = fro / std::sqrt(static_cast<double>(m));
  const Matrix norm_f = f.to_approx().scaled(Scalar(1.0 / scale));
  const auto mv = norm_f.values();

  IsoparametricReport r;
  r.c = 2.0 * norm_f.trace_value();
  for (std::size_t s = 0; s < samples; ++s) {
    GaussianSource rng(seed, s);
    const auto x = rng.normal_vector(m);
    double xx = 0.0;
    for (double e : x) xx += e * e;
    const double centre = component_value(mv, m, x);
    double grad2 = 0.0, lap = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      auto xp = x, xm = x;
      xp[i] += 1.0;
      xm[i] -= 1.0;
      const double fp = component_value(mv, m, xp);
      const double fm = component_value(mv, m, xm);
      const double g = 0.5 * (fp - fm);
      grad2 += g * g;
      lap += fp - 2.0 * centre + fm;
    }
    r.max_gradient_defect = std::max(r.max_gradient_defect, std::abs(grad2 - 4.0 * xx) / (4.0 * xx));
    r.max_laplacian_defect =
        std::max(r.max_laplacian_defect, std::abs(lap - r.c) / (static_cast<double>(m) * (xx + 1.0)));
  }
  r.holds = r.max_gradient_defect <= tolerance && r.max_laplacian_defect <= tolerance;
  return r;
}

SphereReport sphere_restriction_check(const QHM& phi, std::size_t samples, std::uint64_t seed,
                                      const TolerancePolicy& tol) {
  tol.validate();
  const auto sd = spectral_decompose(phi.components.front(), tol);
  std::vector<double> positive;
  for (double e : sd.eigenvalues)
    if (e > tol.eig_pair_tol * std::max(1.0, std::abs(sd.eigenvalues.front()))) positive.push_back(e);
  if (positive.empty() || cluster_eigenvalues(positive, tol).size() != 1)
    throw Error(ErrorKind::NotUmbilical, "positive eigenvalues are not all equal");

  SphereReport r;
  r.radius = positive.front();
  for (std::size_t s = 0; s < samples; ++s) {
    GaussianSource rng(seed, s);
    const auto x = rng.unit_vector(phi.m);
    double norm2 = 0.0;
    for (double v : evaluate(phi, x)) norm2 += v * v;
    r.max_defect = std::max(r.max_defect, std::abs(std::sqrt(norm2) - r.radius));
  }
  r.holds = r.max_defect <= 1e-12 * std::max(1.0, r.radius);
  return r;
}

}  // namespace qhm
}  // namespace quadmorph
