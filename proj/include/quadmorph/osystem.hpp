#pragma once

#include <cstddef>
#include <vector>

#include "quadmorph/matrix.hpp"
#include "quadmorph/systems.hpp"

namespace quadmorph::osystem {

/// Checks orthogonality of every member and the pairwise relations
/// tau_i^t tau_j + tau_j^t tau_i = 0 for i != j.
/// Throws ShapeMismatch, NotOrthogonal(i), AnticommutationViolated(i, j, residual).
OSystem verify_osystem(const std::vector<Matrix>& candidate, const TolerancePolicy& tol = {});

/// m = (2r + 1) 2^(c + 4d) with 0 <= c <= 3; sigma = 2^c + 8d.
struct SigmaDecomposition {
  std::size_t m = 0;
  std::size_t r = 0;
  std::size_t c = 0;
  std::size_t d = 0;
  std::size_t sigma = 0;
};

/// Throws UnsupportedDimension for m = 0.
SigmaDecomposition hurwitz_radon(std::size_t m);

/// (I, J_1, ..., J_{sigma-1}) on R^{2^(c+4d)} repeated 2r + 1 times along
/// the diagonal. Entries are in {0, +1, -1}.
OSystem construct_range_maximal(std::size_t m);

/// The tau-tuple of the standard representation. Throws ArityMismatch if n < 2.
OSystem from_clifford(const CliffordSystem& cs, const TolerancePolicy& tol = {});

/// P_1 = diag(I, -I), P_{i+1} = [[0, tau_i], [tau_i^t, 0]].
CliffordSystem to_clifford(const OSystem& os);

OSystem transpose_system(const OSystem& os);

/// Members at the given 0-based positions, in the given order.
/// Throws BadIndices when empty, repeated or out of range.
OSystem sub_system(const OSystem& os, const std::vector<std::size_t>& indices);

/// Throws ArityMismatch.
OSystem direct_sum(const OSystem& a, const OSystem& b);

/// Right-multiplies every member by tau_1^t so the first becomes I.
OSystem normalize_first(const OSystem& os);

}  // namespace quadmorph::osystem
