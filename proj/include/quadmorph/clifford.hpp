#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "quadmorph/matrix.hpp"
#include "quadmorph/systems.hpp"

namespace quadmorph::clifford {

/// Checks symmetry and every pairwise anticommutation relation.
/// Throws ShapeMismatch, OddDimension, NotSymmetric(i),
/// AnticommutationViolated(i, j, residual).
CliffordSystem verify_clifford(const std::vector<Matrix>& candidate,
                               const TolerancePolicy& tol = {});

/// m(n): the smallest m such that C(2m, n+1) is nonempty.
std::size_t minimal_domain_dimension(std::size_t n);

/// An irreducible system in C(2 m(n), n+1) with entries in {0, +1, -1}:
/// P_1 = diag(I, -I), P_2 = [[0, I], [I, 0]] and P_{a+2} built from the
/// skew generator J_a as [[0, J_a], [J_a^t, 0]].
CliffordSystem construct_irreducible(std::size_t n);

/// Block-diagonal pairing of the members. Throws ArityMismatch.
CliffordSystem direct_sum(const CliffordSystem& a, const CliffordSystem& b);

struct StandardRepresentation {
  Matrix change_of_basis;  // A with A P_1 A^t = diag(I, -I)
  OSystem taus;            // A P_{i+1} A^t = [[0, tau_i], [tau_i^t, 0]]
};

/// Reduction to diag(I, -I) / off-diagonal block form. Bases of the +-1
/// eigenspaces of P_1 are the canonical ones from spectral_decompose, so a
/// system already in standard form comes back with A = I (exactly, when the
/// input is exact).
/// Throws ArityMismatch when n < 2, UnbalancedEigenspaces.
StandardRepresentation to_standard_representation(const CliffordSystem& cs,
                                                  const TolerancePolicy& tol = {});

/// Dimension of { S symmetric : S P_i = P_i S for all i }.
std::size_t commutant_dimension(const CliffordSystem& cs, const TolerancePolicy& tol = {});

bool is_irreducible(const CliffordSystem& cs, const TolerancePolicy& tol = {});

/// trace(P_1 P_2 ... P_n), a conjugation invariant.
double product_trace(const CliffordSystem& cs);

enum class Equivalence { Equivalent, NotEquivalent, Unknown };

struct EquivalenceVerdict {
  Equivalence status = Equivalence::Unknown;
  std::optional<Matrix> certificate;  // A with Q_i = A P_i A^t
  double residual = 0.0;              // worst relative conjugation residual
};

/// Partial algebraic-equivalence check. NotEquivalent is returned only when a
/// conjugation invariant (spectra, commutant dimension, product trace)
/// differs; Equivalent only with a verified certificate.
/// Throws ShapeMismatch.
EquivalenceVerdict algebraically_equivalent(const CliffordSystem& a, const CliffordSystem& b,
                                            const TolerancePolicy& tol = {},
                                            std::uint64_t seed = 0);

/// Orthogonal theta with theta from_i theta^t = to_i for every i, built as
/// the polar factor of a seeded random element of the intertwiner space.
/// Returns nullopt when no verified solution is found.
std::optional<Matrix> find_intertwiner(const std::vector<Matrix>& from, const std::vector<Matrix>& to,
                                       const TolerancePolicy& tol = {}, std::uint64_t seed = 0);

/// Largest relative residual of A P_i A^t - Q_i over i.
double conjugation_residual(const Matrix& a, const std::vector<Matrix>& from,
                            const std::vector<Matrix>& to);

}  // namespace quadmorph::clifford
