#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "quadmorph/linalg.hpp"
#include "quadmorph/matrix.hpp"
#include "quadmorph/systems.hpp"

namespace quadmorph::fixtures {

/// The two-scale map R^8 -> R^3 with spectrum {+-2 x2, +-3 x2}.
inline std::vector<Matrix> two_scale_components() {
  Matrix a1 = Matrix::diagonal({2, 2, 3, 3, -2, -2, -3, -3});
  Matrix a2(8, 8), a3(8, 8);
  auto sym = [](Matrix& a, std::size_t i, std::size_t j, long v) {
    a.set(i, j, Scalar(v));
    a.set(j, i, Scalar(v));
  };
  sym(a2, 0, 4, 2);
  sym(a2, 1, 5, 2);
  sym(a2, 2, 7, 3);
  sym(a2, 3, 6, -3);
  sym(a3, 0, 5, -2);
  sym(a3, 1, 4, 2);
  sym(a3, 2, 6, 3);
  sym(a3, 3, 7, 3);
  return {a1, a2, a3};
}

/// z -> z^2 on R^2.
inline std::vector<Matrix> z_squared() {
  return {Matrix::diagonal({1, -1}), Matrix::from_rows({{0, 1}, {1, 0}})};
}

inline Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
  GaussianSource rng(seed);
  std::vector<double> v(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) v[i * n + j] = v[j * n + i] = rng.normal();
  return Matrix::approx(n, n, std::move(v));
}

inline Matrix random_integer_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  GaussianSource rng(seed);
  std::vector<Rational> v(r * c);
  for (auto& e : v) e = static_cast<long>(std::floor(rng.uniform() * 19.0)) - 9;
  return Matrix::exact(r, c, std::move(v));
}

inline std::vector<Matrix> conjugated(const std::vector<Matrix>& ms, const Matrix& g) {
  std::vector<Matrix> out;
  for (const auto& m : ms) out.push_back(g * m * g.transpose());
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace quadmorph::fixtures
