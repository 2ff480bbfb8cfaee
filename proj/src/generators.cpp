#include "quadmorph/generators.hpp"

#include "quadmorph/error.hpp"

namespace quadmorph::generators {

namespace {

using Vec = std::vector<Rational>;

Vec conjugate(const Vec& x) {
  if (x.size() == 1) return x;
  const std::size_t h = x.size() / 2;
  Vec a(x.begin(), x.begin() + static_cast<long>(h));
  Vec out = conjugate(a);
  for (std::size_t i = h; i < x.size(); ++i) out.push_back(-x[i]);
  return out;
}

Vec add(const Vec& x, const Vec& y, int sign) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = sign > 0 ? Rational(x[i] + y[i]) : Rational(x[i] - y[i]);
  return out;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Matrix product_of(const std::vector<Matrix>& ms) {
  Matrix out = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i) out = out * ms[i];
  return out;
}

std::vector<Matrix> sixteen_family() {
  // Octonion units tensored with diag(1,-1), plus I_8 tensored with the
  // rotation by a quarter turn.
  const Matrix sz = Matrix::diagonal({1, -1});
  const Matrix rot = Matrix::from_rows({{0, -1}, {1, 0}});
  std::vector<Matrix> out;
  for (std::size_t u = 1; u < 8; ++u) out.push_back(kronecker(left_multiplication(8, u), sz));
  out.push_back(kronecker(Matrix::identity(8), rot));
  return out;
}

}  // namespace

std::vector<Rational> cayley_dickson_product(const std::vector<Rational>& a,
                                             const std::vector<Rational>& b) {
  if (a.size() != b.size() || !is_power_of_two(a.size()))
    throw Error(ErrorKind::DimensionMismatch, "Cayley-Dickson operands must share a power-of-two size");
  if (a.size() == 1) return {a[0] * b[0]};
  const std::size_t h = a.size() / 2;
  const Vec a1(a.begin(), a.begin() + static_cast<long>(h)), a2(a.begin() + static_cast<long>(h), a.end());
  const Vec b1(b.begin(), b.begin() + static_cast<long>(h)), b2(b.begin() + static_cast<long>(h), b.end());
  Vec first = add(cayley_dickson_product(a1, b1), cayley_dickson_product(conjugate(b2), a2), -1);
  Vec second = add(cayley_dickson_product(b2, a1), cayley_dickson_product(a2, conjugate(b1)), +1);
  first.insert(first.end(), second.begin(), second.end());
  return first;
}

Matrix left_multiplication(std::size_t dim, std::size_t unit) {
  if (dim != 1 && dim != 2 && dim != 4 && dim != 8)
    throw Error(ErrorKind::UnsupportedDimension, "division algebras exist only in dimensions 1, 2, 4, 8");
  if (unit >= dim) throw Error(ErrorKind::BadIndices, "unit index out of range");
  Vec e(dim, Rational(0));
  e[unit] = 1;
  Matrix out(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    Vec f(dim, Rational(0));
    f[j] = 1;
    Vec col = cayley_dickson_product(e, f);
    for (std::size_t i = 0; i < dim; ++i) out.set(i, j, Scalar(col[i]));
  }
  return out;
}

std::size_t skew_family_dimension(std::size_t count) {
  static constexpr std::size_t kBase[8] = {1, 2, 4, 4, 8, 8, 8, 8};
  std::size_t m = kBase[count % 8];
  for (std::size_t k = 0; k < count / 8; ++k) m *= 16;
  return m;
}

std::vector<Matrix> skew_family(std::size_t count) {
  if (count == 0) return {};
  if (count <= 7) {
    const std::size_t dim = skew_family_dimension(count);
    std::vector<Matrix> out;
    for (std::size_t u = 1; u <= count; ++u) out.push_back(left_multiplication(dim, u));
    return out;
  }
  const std::vector<Matrix> e = sixteen_family();
  const Matrix omega = product_of(e);
  const std::vector<Matrix> inner = skew_family(count - 8);
  const std::size_t inner_dim = skew_family_dimension(count - 8);
  std::vector<Matrix> out;
  for (const auto& ea : e) out.push_back(kronecker(ea, Matrix::identity(inner_dim)));
  for (const auto& kb : inner) out.push_back(kronecker(omega, kb));
  return out;
}

}  // namespace quadmorph::generators
