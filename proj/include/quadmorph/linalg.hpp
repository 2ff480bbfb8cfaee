#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "quadmorph/matrix.hpp"

namespace quadmorph {

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // orthogonal, column k pairs with eigenvalues[k]
};

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Eigenvalues closer than eig_pair_tol (relative to max(1, |lambda|max))
/// form a cluster. The basis of every cluster is rebuilt from the standard
/// basis: e_1, e_2, ... are projected onto the cluster subspace in index
/// order and Gram-Schmidt orthonormalized, so identical inputs give identical
/// eigenvectors and diagonal inputs give standard basis vectors.
///
/// Throws NotSymmetric, NoConvergence.
SpectralDecomposition spectral_decompose(const Matrix& a, const TolerancePolicy& tol = {});

/// Groups of equal eigenvalues (index ranges into a descending sequence).
struct EigenCluster {
  std::size_t begin;
  std::size_t end;
  double mean;
};
std::vector<EigenCluster> cluster_eigenvalues(std::span<const double> descending,
                                              const TolerancePolicy& tol);

/// Singular values (descending) by one-sided Jacobi.
std::vector<double> singular_values(const Matrix& a);

/// Exact Gaussian elimination for exact matrices; singular values above
/// rank_tol * sigma_max otherwise.
std::size_t numeric_rank(const Matrix& a, const TolerancePolicy& tol = {});

/// Haar-distributed orthogonal m x m matrix from seeded Gaussian samples
/// (Gram-Schmidt with positive diagonal of R). Deterministic in (m, seed).
Matrix random_orthogonal(std::size_t m, std::uint64_t seed);

/// Deterministic Gaussian source. Only mt19937_64 (whose output sequence is
/// fixed by the standard) is used, so samples are portable across platforms.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed);
  /// A source keyed by (seed, stream): independent samples per index.
  GaussianSource(std::uint64_t seed, std::uint64_t stream);

  double uniform();  // in (0, 1)
  double normal();
  std::vector<double> normal_vector(std::size_t n);
  std::vector<double> unit_vector(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Orthonormal basis (columns) of the null space of the stacked linear maps
/// whose Gram matrix is `gram` (symmetric PSD); eigenvalues below
/// relative_cut * lambda_max count as zero.
Matrix null_space_from_gram(const Matrix& gram, double relative_cut);

/// Nearest orthogonal matrix (polar factor). Returns an empty matrix if the
/// input is numerically singular.
Matrix polar_orthogonal(const Matrix& x, double min_singular = 1e-8);

}  // namespace quadmorph
