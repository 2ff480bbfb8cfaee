#pragma once

// Integer-entry generators shared by the Clifford and O-system constructions.
//
// Division algebras come from the Cayley-Dickson doubling
//   (a, b)(c, d) = (ac - d* b, d a + b c*),   (a, b)* = (a*, -b)
// starting from the reals, which yields R, C, H and the octonions with
// basis e_0 = 1, e_1, ..., e_{2^k - 1}.

#include <cstddef>
#include <vector>

#include "quadmorph/matrix.hpp"

namespace quadmorph::generators {

/// Product of two elements of the 2^k-dimensional Cayley-Dickson algebra.
std::vector<Rational> cayley_dickson_product(const std::vector<Rational>& a,
                                             const std::vector<Rational>& b);

/// Matrix of y -> e_unit * y in the algebra of dimension `dim` (1, 2, 4, 8).
Matrix left_multiplication(std::size_t dim, std::size_t unit);

/// Smallest m such that R^m carries `count` anticommuting skew-symmetric
/// orthogonal matrices: 1, 2, 4, 4, 8, 8, 8, 8 for count 0..7, then x16 per
/// eight more.
std::size_t skew_family_dimension(std::size_t count);

/// `count` skew-symmetric orthogonal matrices J_a with
/// J_a J_b + J_b J_a = -2 delta_ab I on R^{skew_family_dimension(count)}.
///
/// count <= 7: left multiplications by imaginary units of C, H or O.
/// count >= 8: with E_1..E_8 the fixed family on R^16 and
/// Omega = E_1 ... E_8 (a symmetric involution anticommuting with every E_a),
/// the family is {E_a (x) I} followed by {Omega (x) K_b} for the family K of
/// size count - 8.
std::vector<Matrix> skew_family(std::size_t count);

}  // namespace quadmorph::generators
