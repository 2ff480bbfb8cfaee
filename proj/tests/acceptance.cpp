#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "quadmorph/clifford.hpp"
#include "quadmorph/error.hpp"
#include "quadmorph/linalg.hpp"
#include "quadmorph/orthomul.hpp"
#include "quadmorph/osystem.hpp"
#include "quadmorph/qhm.hpp"
#include "support.hpp"

using namespace quadmorph;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome ok() { return {true, ""}; }
Outcome fail(const std::string& why) { return {false, why}; }

double quad(const Matrix& a, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += x[i] * a.value(i, j) * x[j];
  return s;
}

std::vector<double> times(const Matrix& g, const std::vector<double>& x) {
  std::vector<double> y(g.rows(), 0.0);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) y[i] += g.value(i, j) * x[j];
  return y;
}

Outcome hurwitz_radon_table() {
  const std::size_t expected[] = {1, 2, 1, 4, 1, 2, 1, 8, 1, 2, 1, 4, 1, 2, 1, 9};
  for (std::size_t m = 1; m <= 16; ++m)
    if (osystem::hurwitz_radon(m).sigma != expected[m - 1]) return fail("sigma(" + std::to_string(m) + ")");
  return ok();
}

Outcome minimal_domain_table() {
  const std::size_t expected[] = {1, 2, 4, 4, 8, 8, 8, 8, 16, 32};
  for (std::size_t n = 1; n <= 10; ++n)
    if (clifford::minimal_domain_dimension(n) != expected[n - 1]) return fail("m(" + std::to_string(n) + ")");
  return ok();
}

Outcome two_scale_golden() {
  const auto comps = fixtures::two_scale_components();
  const auto phi = qhm::verify_qhm(comps);
  if (!phi.is_exact()) return fail("not exact");
  const Matrix a1sq = comps[0] * comps[0];
  for (std::size_t a = 0; a < 3; ++a) {
    if (comps[a].trace().rational() != 0) return fail("trace");
    if (!(comps[a] * comps[a] - a1sq).is_zero()) return fail("squares");
    for (std::size_t b = a + 1; b < 3; ++b)
      if (!(comps[a] * comps[b] + comps[b] * comps[a]).is_zero()) return fail("anticommutator");
  }
  const auto rep = qhm::classify(phi);
  if (rep.q_rank != 8 || rep.is_umbilical) return fail("rank or umbilicity");
  const std::vector<double> spectrum{3, 3, 2, 2};
  for (std::size_t k = 0; k < 4; ++k)
    if (std::abs(rep.positive_eigenvalues[k] - spectrum[k]) > 1e-12) return fail("spectrum");
  if (rep.splitting.size() != 2 || rep.splitting[0].scale != 3.0 || rep.splitting[1].scale != 2.0)
    return fail("splitting scales");
  const auto sf = qhm::single_function_representation(phi);
  if (sf.blocks.size() != 2 || sf.blocks[0].scale != 2.0 || sf.blocks[1].scale != 3.0) return fail("F blocks");
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    GaussianSource rng(2024, s);
    const auto x = rng.normal_vector(8);
    const auto v = qhm::evaluate(phi, x);
    for (std::size_t a = 1; a < 3; ++a) worst = std::max(worst, std::abs(quad(sf.f_matrix, times(sf.rotations[a], x)) - v[a]));
  }
  if (worst > 1e-9) return fail("single function defect " + std::to_string(worst));
  return ok();
}

Outcome correspondence_round_trips() {
  for (std::size_t m = 1; m <= 16; ++m) {
    const auto os = osystem::construct_range_maximal(m);
    const auto back = osystem::from_clifford(osystem::to_clifford(os));
    if (back.matrices != os.matrices) return fail("F(P(tau)) at m=" + std::to_string(m));
  }
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto cs = clifford::construct_irreducible(n);
    if (cs.two_m > 32) break;
    const CliffordSystem moved{cs.two_m, cs.n, fixtures::conjugated(cs.matrices, random_orthogonal(cs.two_m, 40 + n))};
    const auto again = osystem::to_clifford(osystem::from_clifford(moved));
    const auto v = clifford::algebraically_equivalent(moved, again);
    if (v.status != clifford::Equivalence::Equivalent || !v.certificate) return fail("class at n=" + std::to_string(n));
    if (clifford::conjugation_residual(*v.certificate, moved.matrices, again.matrices) >= 1e-8)
      return fail("certificate residual");
  }
  return ok();
}

Outcome existence_sweep() {
  for (std::size_t n = 1; n <= 9; ++n) {
    const auto phi = qhm::from_clifford(clifford::construct_irreducible(n));
    qhm::verify_qhm(phi.components, {}, 16);
    if (phi.m != 2 * clifford::minimal_domain_dimension(n) || phi.n != n + 1) return fail("dims");
    const auto rep = qhm::classify(phi);
    if (!rep.is_umbilical || rep.positive_eigenvalues.front() != 1.0) return fail("eigenvalue at n=" + std::to_string(n));
  }
  for (std::size_t m : {1u, 2u, 4u, 8u, 16u}) {
    const auto os = osystem::construct_range_maximal(m);
    if (!os.is_exact() || os.n != osystem::hurwitz_radon(m).sigma) return fail("O(m, sigma)");
    osystem::verify_osystem(os.matrices);
  }
  return ok();
}

Outcome odd_dimension_obstruction() {
  std::size_t accepted = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const std::size_t m = 3 + 2 * (s % 3);
    std::vector<Matrix> cand;
    if (s % 2 == 0)
      cand = {Matrix::identity(m), random_orthogonal(m, s)};
    else
      cand = {random_orthogonal(m, 5000 + s), random_orthogonal(m, 9000 + s)};
    try {
      osystem::verify_osystem(cand);
      ++accepted;
    } catch (const Error&) {
    }
  }
  if (accepted != 0) return fail(std::to_string(accepted) + " false accepts");
  return ok();
}

Outcome normal_form_suite() {
  const long scales[] = {1, 2, 3, 5};
  for (std::uint64_t s = 0; s < 200; ++s) {
    GaussianSource rng(700, s);
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 4.0);
    const long l1 = scales[static_cast<std::size_t>(rng.uniform() * 4.0)];
    const long l2 = scales[static_cast<std::size_t>(rng.uniform() * 4.0)];
    const auto base_a = qhm::from_clifford(clifford::construct_irreducible(n));
    auto base_b = base_a;
    if (rng.uniform() < 0.5) base_b.components.back() = -base_b.components.back();
    const auto sum = qhm::direct_sum(qhm::scaled(base_a, Scalar(l1)), qhm::scaled(base_b, Scalar(l2)));
    const qhm::QHM phi{sum.m, sum.n, fixtures::conjugated(sum.components, random_orthogonal(sum.m, 300 + s))};
    const auto nf = qhm::normal_form(phi);
    if (qhm::normal_form_residual(nf) > 1e-8) return fail("normal form residual at " + std::to_string(s));
    const auto rep = qhm::classify(phi);
    std::vector<std::pair<double, std::size_t>> got;
    for (const auto& part : rep.splitting) got.emplace_back(part.scale, part.summand.m);
    std::vector<std::pair<double, std::size_t>> want;
    if (l1 == l2)
      want = {{static_cast<double>(l1), base_a.m + base_b.m}};
    else
      want = {{static_cast<double>(std::max(l1, l2)), base_a.m}, {static_cast<double>(std::min(l1, l2)), base_b.m}};
    if (got.size() != want.size()) return fail("summand count at " + std::to_string(s));
    for (std::size_t k = 0; k < got.size(); ++k)
      if (std::abs(got[k].first - want[k].first) > 1e-8 || got[k].second != want[k].second)
        return fail("scales or dimensions at " + std::to_string(s));
  }
  return ok();
}

Outcome hopf_criteria() {
  for (std::size_t n : {1u, 2u, 4u, 8u}) {
    const auto h = orthomul::hopf_construction(orthomul::standard_multiplication(n));
    qhm::verify_qhm(h.components);
    if (!h.is_exact()) return fail("inexact Hopf map");
    const auto sr = qhm::sphere_restriction_check(h, 1000, 11);
    if (!sr.holds || sr.radius != 1.0 || sr.max_defect > 1e-12) return fail("sphere at n=" + std::to_string(n));
  }
  const auto os = osystem::sub_system(osystem::construct_range_maximal(4), {0, 1, 2});
  const auto phi = qhm::from_clifford(osystem::to_clifford(os));
  const auto ext = qhm::range_extend(phi);
  if (ext.n != 5) return fail("extended arity");
  const auto rep = qhm::classify(ext);
  const auto hopf = qhm::classify(orthomul::hopf_construction(orthomul::standard_multiplication(4)));
  if (rep.q_rank != hopf.q_rank || rep.q_rank != 8) return fail("q_rank");
  if (!rep.is_umbilical || std::abs(rep.positive_eigenvalues.front() - 1.0) > 1e-9) return fail("eigenvalue");
  return ok();
}

Outcome isoparametric_check() {
  for (std::size_t m : {1u, 2u, 4u, 8u}) {
    std::vector<Rational> d(2 * m, 1);
    for (std::size_t i = m; i < 2 * m; ++i) d[i] = -1;
    const auto rep = qhm::verify_isoparametric(Matrix::diagonal(d), 1000, 13, 1e-10);
    if (!rep.holds || rep.c != 0.0) return fail("F0 at m=" + std::to_string(m));
  }
  return ok();
}

Outcome class_counting() {
  for (std::size_t n = 1; n <= 16; ++n)
    for (std::size_t k = 1; k <= 6; ++k) {
      const std::size_t want = n % 4 == 0 ? (std::size_t{1} << (k - 1)) : 1;
      if (qhm::count_biequivalence_classes(n, k) != want) return fail("formula");
    }
  for (std::size_t k = 1; k <= 4; ++k)
    if (qhm::enumerate_sign_pattern_classes(4, k) != (std::size_t{1} << (k - 1)))
      return fail("enumeration at k=" + std::to_string(k));
  return ok();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Hurwitz-Radon table", hurwitz_radon_table},
      {"minimal domain table", minimal_domain_table},
      {"two-scale golden map", two_scale_golden},
      {"correspondence round trips", correspondence_round_trips},
      {"existence sweep", existence_sweep},
      {"odd dimension obstruction", odd_dimension_obstruction},
      {"normal form and splitting suite", normal_form_suite},
      {"Hopf criteria", hopf_criteria},
      {"isoparametric check", isoparametric_check},
      {"class counting", class_counting},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %zu: %s%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.empty() ? "" : " - ", o.detail.c_str());
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
