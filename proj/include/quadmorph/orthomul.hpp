#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "quadmorph/matrix.hpp"
#include "quadmorph/systems.hpp"

namespace quadmorph::orthomul {

/// Bilinear mu: R^p x R^q -> R^n_out with mu(e_i, y) = slices[i] y.
struct OrthogonalMultiplication {
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t n_out = 0;
  std::vector<Matrix> slices;  // p matrices of size n_out x q

  bool is_exact() const;
};

/// Slices are the members: mu(x, y) = sum_i x^i tau_i y.
OrthogonalMultiplication from_osystem(const OSystem& os);

/// Throws NotSquare, and whatever verify_osystem raises.
OSystem to_osystem(const OrthogonalMultiplication& mu, const TolerancePolicy& tol = {});

/// mu(x, y) evaluated in floating point. Throws DimensionMismatch.
std::vector<double> apply(const OrthogonalMultiplication& mu, const std::vector<double>& x,
                          const std::vector<double>& y);

/// Product table of R, C, H or O (n = 1, 2, 4, 8) from the Cayley-Dickson
/// doubling. Throws UnsupportedDimension.
OrthogonalMultiplication standard_multiplication(std::size_t n);

/// H(x, y) = (|x|^2 - |y|^2, 2 mu(x, y)) on R^{2p}; the first component
/// matrix is diag(I, -I). Throws ShapeMismatch unless p = q.
QuadraticHarmonicMorphism hopf_construction(const OrthogonalMultiplication& mu);

struct OrthomulReport {
  bool holds = false;
  bool exact_path = false;  // decided by the exact slice relations
  double max_defect = 0.0;  // max | |mu(x,y)| - |x||y| | / (|x||y|) over samples
  std::size_t samples = 0;
};

OrthomulReport verify_orthomul(const OrthogonalMultiplication& mu, std::size_t samples,
                               std::uint64_t seed, const TolerancePolicy& tol = {});

}  // namespace quadmorph::orthomul
