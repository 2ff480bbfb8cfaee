#include <gtest/gtest.h>

#include <cmath>

#include "quadmorph/clifford.hpp"
#include "quadmorph/error.hpp"
#include "quadmorph/linalg.hpp"
#include "quadmorph/orthomul.hpp"
#include "quadmorph/osystem.hpp"
#include "quadmorph/qhm.hpp"
#include "support.hpp"

using namespace quadmorph;

namespace {

const Matrix kRot = Matrix::from_rows({{0, -1}, {1, 0}});

}  // namespace

TEST(VerifyOSystem, Examples) {
  EXPECT_EQ(osystem::verify_osystem({Matrix::identity(2), kRot}).n, 2u);
  EXPECT_EQ(osystem::verify_osystem({Matrix::identity(1)}).m, 1u);
  try {
    osystem::verify_osystem({Matrix::identity(3), random_orthogonal(3, 1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AnticommutationViolated);
  }
  try {
    osystem::verify_osystem({Matrix::identity(2), Matrix::from_rows({{1, 1}, {0, 1}})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotOrthogonal);
    EXPECT_EQ(e.indices(), (std::vector<std::size_t>{2}));
  }
}

TEST(HurwitzRadon, Decompositions) {
  const auto h8 = osystem::hurwitz_radon(8);
  EXPECT_EQ(h8.r, 0u);
  EXPECT_EQ(h8.c, 3u);
  EXPECT_EQ(h8.d, 0u);
  EXPECT_EQ(h8.sigma, 8u);
  const auto h16 = osystem::hurwitz_radon(16);
  EXPECT_EQ(h16.c, 0u);
  EXPECT_EQ(h16.d, 1u);
  EXPECT_EQ(h16.sigma, 9u);
  for (std::size_t m = 1; m < 40; m += 2) {
    const auto h = osystem::hurwitz_radon(m);
    EXPECT_EQ(h.sigma, 1u);
    EXPECT_EQ(h.c, 0u);
    EXPECT_EQ(h.d, 0u);
    EXPECT_EQ(2 * h.r + 1, m);
  }
  const auto h12 = osystem::hurwitz_radon(12);
  EXPECT_EQ(h12.r, 1u);
  EXPECT_EQ(h12.c, 2u);
  EXPECT_EQ(h12.sigma, 4u);
}

TEST(RangeMaximal, SmallCases) {
  const auto o2 = osystem::construct_range_maximal(2);
  ASSERT_EQ(o2.n, 2u);
  EXPECT_EQ(o2.matrices[0], Matrix::identity(2));
  EXPECT_EQ(o2.matrices[1], kRot);
  EXPECT_EQ(osystem::construct_range_maximal(4).n, 4u);
  EXPECT_EQ(osystem::construct_range_maximal(16).n, 9u);
}

TEST(RangeMaximal, ValidUpTo64) {
  for (std::size_t m = 1; m <= 64; ++m) {
    const auto os = osystem::construct_range_maximal(m);
    EXPECT_EQ(os.n, osystem::hurwitz_radon(m).sigma) << m;
    EXPECT_TRUE(os.is_exact());
    EXPECT_EQ(os.matrices.front(), Matrix::identity(m));
    EXPECT_NO_THROW(osystem::verify_osystem(os.matrices)) << m;
  }
}

TEST(Correspondence, CliffordRoundTrips) {
  const OSystem o11{1, 1, {Matrix::identity(1)}};
  const auto cs = osystem::to_clifford(o11);
  EXPECT_EQ(cs.matrices[0], Matrix::diagonal({1, -1}));
  EXPECT_EQ(cs.matrices[1], Matrix::from_rows({{0, 1}, {1, 0}}));
  const auto back = osystem::from_clifford(clifford::construct_irreducible(1));
  EXPECT_EQ(back.matrices[0], Matrix::identity(1));

  const auto c16 = osystem::to_clifford(osystem::construct_range_maximal(8));
  EXPECT_EQ(c16.two_m, 16u);
  EXPECT_EQ(c16.n, 9u);
  EXPECT_NO_THROW(clifford::verify_clifford(c16.matrices));

  for (std::size_t m : {1u, 2u, 4u, 6u, 8u, 12u, 16u}) {
    const auto os = osystem::construct_range_maximal(m);
    const auto again = osystem::from_clifford(osystem::to_clifford(os));
    ASSERT_EQ(again.n, os.n);
    for (std::size_t i = 0; i < os.n; ++i) EXPECT_EQ(again.matrices[i], os.matrices[i]);
  }
}

TEST(Correspondence, DirectSumCommutesWithF) {
  const auto a = clifford::construct_irreducible(2);
  const auto b = clifford::construct_irreducible(2);
  const auto f_sum = osystem::from_clifford(clifford::direct_sum(a, b));
  const auto sum_f = osystem::direct_sum(osystem::from_clifford(a), osystem::from_clifford(b));
  const auto v = clifford::algebraically_equivalent(osystem::to_clifford(f_sum), osystem::to_clifford(sum_f));
  EXPECT_EQ(v.status, clifford::Equivalence::Equivalent);
}

TEST(TransposeAndSubsets, StayValid) {
  const auto os = osystem::verify_osystem({Matrix::identity(2), kRot});
  const auto t = osystem::transpose_system(os);
  EXPECT_EQ(t.matrices[1], kRot.transpose());
  EXPECT_NO_THROW(osystem::verify_osystem(t.matrices));

  const auto o8 = osystem::construct_range_maximal(8);
  EXPECT_NO_THROW(osystem::verify_osystem(osystem::sub_system(o8, {0, 1, 2}).matrices));
  EXPECT_NO_THROW(osystem::verify_osystem(osystem::sub_system(o8, {5}).matrices));
  EXPECT_NO_THROW(osystem::verify_osystem(osystem::transpose_system(o8).matrices));
  EXPECT_THROW(osystem::sub_system(o8, {}), Error);
  EXPECT_THROW(osystem::sub_system(o8, {1, 1}), Error);
  EXPECT_THROW(osystem::sub_system(o8, {8}), Error);
}

TEST(DirectSum, OSystems) {
  const auto o = osystem::verify_osystem({Matrix::identity(2), kRot});
  const auto s = osystem::direct_sum(o, o);
  EXPECT_EQ(s.m, 4u);
  EXPECT_NO_THROW(osystem::verify_osystem(s.matrices));
  EXPECT_THROW(osystem::direct_sum(o, osystem::construct_range_maximal(4)), Error);
  // O(m, n) nonempty gives O(km, n) through repeated sums.
  auto acc = o;
  for (int k = 0; k < 3; ++k) acc = osystem::direct_sum(acc, o);
  EXPECT_EQ(acc.m, 8u);
  EXPECT_NO_THROW(osystem::verify_osystem(acc.matrices));
}

TEST(OrthogonalMultiplication, ComplexProduct) {
  const auto mu = orthomul::from_osystem(osystem::verify_osystem({Matrix::identity(2), kRot}));
  const auto r = orthomul::apply(mu, {2, 3}, {5, 7});
  EXPECT_DOUBLE_EQ(r[0], 2 * 5 - 3 * 7);
  EXPECT_DOUBLE_EQ(r[1], 2 * 7 + 3 * 5);
  const auto c = orthomul::standard_multiplication(2);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(c.slices[i], mu.slices[i]);
  const auto back = orthomul::to_osystem(c);
  EXPECT_EQ(back.matrices[1], kRot);
}

TEST(OrthogonalMultiplication, StandardAlgebras) {
  EXPECT_DOUBLE_EQ(orthomul::apply(orthomul::standard_multiplication(1), {3}, {4})[0], 12.0);
  for (std::size_t n : {1u, 2u, 4u, 8u}) {
    const auto mu = orthomul::standard_multiplication(n);
    EXPECT_NO_THROW(orthomul::to_osystem(mu));
    const auto rep = orthomul::verify_orthomul(mu, 100, 1);
    EXPECT_TRUE(rep.holds);
    EXPECT_TRUE(rep.exact_path);
    EXPECT_EQ(rep.max_defect, 0.0);
  }
  EXPECT_THROW(orthomul::standard_multiplication(3), Error);
}

TEST(OrthogonalMultiplication, RejectsRepeatedSlice) {
  const orthomul::OrthogonalMultiplication mu{2, 2, 2, {Matrix::identity(2), Matrix::identity(2)}};
  const auto rep = orthomul::verify_orthomul(mu, 50, 2);
  EXPECT_FALSE(rep.holds);
  EXPECT_GT(rep.max_defect, 1e-3);
  EXPECT_LE(std::abs(std::sqrt(2.0) - 1.0 - rep.max_defect), std::sqrt(2.0));
}

TEST(OrthogonalMultiplication, NonSquareSlices) {
  const orthomul::OrthogonalMultiplication mu{1, 2, 3, {Matrix(3, 2)}};
  EXPECT_THROW(orthomul::to_osystem(mu), Error);
}

TEST(OrthogonalMultiplication, RangeMaximalSampled) {
  const auto mu = orthomul::from_osystem(osystem::construct_range_maximal(8));
  orthomul::OrthogonalMultiplication approx = mu;
  for (auto& s : approx.slices) s = s.to_approx();
  const auto rep = orthomul::verify_orthomul(approx, 1000, 9);
  EXPECT_TRUE(rep.holds);
  EXPECT_FALSE(rep.exact_path);
  EXPECT_LT(rep.max_defect, 1e-12);
}

TEST(Hopf, ComplexCase) {
  const auto h = orthomul::hopf_construction(orthomul::standard_multiplication(2));
  EXPECT_EQ(h.m, 4u);
  EXPECT_EQ(h.n, 3u);
  EXPECT_EQ(h.components[0], Matrix::diagonal({1, 1, -1, -1}));
  EXPECT_NO_THROW(qhm::verify_qhm(h.components));
  const auto v = qhm::evaluate(h, {1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(v[0], 1 + 4 - 9 - 16);
  // 2 mu((1,2),(3,4)) = 2 (3 - 8, 4 + 6)
  EXPECT_DOUBLE_EQ(v[1], -10.0);
  EXPECT_DOUBLE_EQ(v[2], 20.0);
}

TEST(Hopf, NormIdentityAndOctonions) {
  for (std::size_t n : {1u, 2u, 4u, 8u}) {
    const auto h = orthomul::hopf_construction(orthomul::standard_multiplication(n));
    EXPECT_NO_THROW(qhm::verify_qhm(h.components));
    for (std::uint64_t s = 0; s < 1000; ++s) {
      GaussianSource rng(77, s);
      const auto x = rng.normal_vector(2 * n);
      double xx = 0.0, hh = 0.0;
      for (double e : x) xx += e * e;
      for (double e : qhm::evaluate(h, x)) hh += e * e;
      ASSERT_NEAR(std::sqrt(hh), xx, 1e-12 * xx);
    }
  }
  const orthomul::OrthogonalMultiplication wide{2, 3, 3, {Matrix::identity(3), Matrix::identity(3)}};
  EXPECT_THROW(orthomul::hopf_construction(wide), Error);
}

TEST(Isometry, SlicesCombineToOrthogonal) {
  const auto os = osystem::construct_range_maximal(16);
  for (std::uint64_t s = 0; s < 100; ++s) {
    GaussianSource rng(5, s);
    const auto x = rng.unit_vector(os.n);
    Matrix combo = Matrix::approx_zeros(16, 16);
    for (std::size_t i = 0; i < os.n; ++i) combo = combo + os.matrices[i].scaled(Scalar(x[i]));
    EXPECT_LT(relative_residual(combo.transpose() * combo - Matrix::identity(16), 16), 1e-9);
  }
}
