#pragma once

#include <cstddef>
#include <vector>

#include "quadmorph/matrix.hpp"

namespace quadmorph {

/// n symmetric 2m x 2m matrices P_i with P_i P_j + P_j P_i = 2 delta_ij I.
/// Only produced by clifford::verify_clifford or by constructions that
/// preserve validity.
struct CliffordSystem {
  std::size_t two_m = 0;
  std::size_t n = 0;
  std::vector<Matrix> matrices;

  bool is_exact() const;
};

/// n orthogonal m x m matrices tau_i with
/// tau_i^t tau_j + tau_j^t tau_i = 2 delta_ij I.
struct OSystem {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<Matrix> matrices;

  bool is_exact() const;
};

/// phi(X) = (X^t A_1 X, ..., X^t A_n X) with symmetric m x m components.
struct QuadraticHarmonicMorphism {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<Matrix> components;

  bool is_exact() const;
};

}  // namespace quadmorph
