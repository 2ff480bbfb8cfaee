#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "quadmorph/matrix.hpp"
#include "quadmorph/systems.hpp"

namespace quadmorph::qhm {

using QHM = QuadraticHarmonicMorphism;

/// Independent finite-difference check of harmonicity and horizontal weak
/// conformality at seeded points. Central differences with unit step are
/// exact for quadratics, so defects only reflect rounding.
struct SampledVerdict {
  bool harmonic = true;
  bool conformal = true;
  double max_defect = 0.0;
  std::size_t samples = 0;

  bool passed() const { return harmonic && conformal; }
};

SampledVerdict sampled_check(const std::vector<Matrix>& components, std::size_t samples, std::uint64_t seed);

/// Exact matrix criteria: trace A_a = 0, A_a A_b + A_b A_a = 0 (a != b) and
/// A_a^2 = A_1^2, followed by sampled_check.
/// Throws ShapeMismatch, NotSymmetric(a), Degenerate, NotHarmonic(a, trace),
/// NotHorizontallyConformal(a, b, residual), SampleDisagreement.
QHM verify_qhm(const std::vector<Matrix>& candidate, const TolerancePolicy& tol = {},
               std::size_t samples = 64, std::uint64_t seed = 0);

/// Throws DimensionMismatch.
std::vector<double> evaluate(const QHM& phi, const std::vector<double>& x);

/// Components A_a = P_a.
QHM from_clifford(const CliffordSystem& cs);

/// Block-diagonal pairing. Throws ArityMismatch.
QHM direct_sum(const QHM& a, const QHM& b);

QHM scaled(const QHM& phi, const Scalar& factor);

struct SplitSummand {
  double scale = 0.0;
  QHM summand;  // umbilical with positive eigenvalue 1
};

struct ClassificationReport {
  std::size_t q_rank = 0;
  std::vector<double> positive_eigenvalues;  // descending, with multiplicity
  std::size_t zero_count = 0;
  bool is_q_nonsingular = false;
  bool is_umbilical = false;
  std::vector<SplitSummand> splitting;  // scales descending
  /// q_rank x m with orthonormal rows; phi(X) = (scale_1 phi_1 + ... ) (W X),
  /// the summands acting on consecutive row blocks of W.
  Matrix coordinate_map;
};

/// Throws RankMismatch, OddRank, AsymmetricSpectrum, Degenerate.
ClassificationReport classify(const QHM& phi, const TolerancePolicy& tol = {});

/// G A_1 G^t = diag(D, -D), G A_{i+1} G^t = [[0, B_i], [B_i^t, 0]].
struct NormalForm {
  Matrix change_of_coords;  // G
  Matrix d;                 // positive diagonal, descending
  std::vector<Matrix> b;
};

/// Throws QSingular, AsymmetricSpectrum.
NormalForm normal_form(const QHM& phi, const TolerancePolicy& tol = {});

/// Worst of the three relations D B = B D, B^t B = D^2 and
/// B_i^t B_j + B_j^t B_i = 0, relative to |D|^2.
double normal_form_residual(const NormalForm& nf);

/// Components rebuilt from (G, D, B).
std::vector<Matrix> reassemble(const NormalForm& nf);

struct Projection {
  Matrix projection;  // q_rank x m, orthonormal rows
  QHM reduced;        // Q-nonsingular on R^{q_rank}
};

/// Restriction to the orthogonal complement of the common kernel. The range
/// basis is Gram-Schmidt of e_1, e_2, ... projected off the kernel, so a
/// zero-padded map is recovered exactly.
/// Throws SharedKernelViolated(a), Degenerate.
Projection project_nonsingular(const QHM& phi, const TolerancePolicy& tol = {});

/// One block scale * F_0 with F_0 = |x|^2 - |y|^2 on R^{2 half}.
struct FBlock {
  double scale = 0.0;
  std::size_t half = 0;
};

struct SingleFunction {
  std::vector<FBlock> blocks;  // ascending scale
  Matrix f_matrix;             // the block sum of scale * diag(I, -I)
  std::vector<Matrix> rotations;  // G_a with phi^a(X) = F(G_a X), a = 1..n
};

/// Throws QSingular, RankMismatch (component spectra differ).
SingleFunction single_function_representation(const QHM& phi, const TolerancePolicy& tol = {});

/// Adds component functions up to range dimension sigma(m/2) + 1 by aligning
/// the extracted O-system with the canonical range-maximal family.
/// Throws NotDomainMinimal, AlreadyRangeMaximal, NotExtendable.
QHM range_extend(const QHM& phi, const TolerancePolicy& tol = {}, std::uint64_t seed = 0);

/// 2^{k-1} when n = 0 mod 4, else 1. Throws UnsupportedDimension for 0.
std::size_t count_biequivalence_classes(std::size_t n, std::size_t k);

/// Builds every sum 1 phi_1 + 2 phi_2 + ... + k phi_k of domain-minimal maps
/// into R^{n+1} whose summands come from construct_irreducible(n) with the
/// last member optionally negated, classifies each one and counts the
/// distinct per-summand product-trace sign patterns up to a global flip.
std::size_t enumerate_sign_pattern_classes(std::size_t n, std::size_t k, const TolerancePolicy& tol = {});

struct IsoparametricReport {
  bool holds = false;
  double c = 0.0;  // Laplacian after normalization
  double max_gradient_defect = 0.0;
  double max_laplacian_defect = 0.0;
};

/// F(x) = x^t M x scaled so that tr(M^2) = m; checks |grad F|^2 = 4|x|^2 and
/// Laplacian F = 2 tr(M) at seeded points.
IsoparametricReport verify_isoparametric(const Matrix& f, std::size_t samples, std::uint64_t seed,
                                         double tolerance = 1e-10);

struct SphereReport {
  bool holds = false;
  double radius = 0.0;
  double max_defect = 0.0;
};

/// |phi(x)| = lambda for seeded unit x. Throws NotUmbilical.
SphereReport sphere_restriction_check(const QHM& phi, std::size_t samples, std::uint64_t seed,
                                      const TolerancePolicy& tol = {});

}  // namespace quadmorph::qhm
