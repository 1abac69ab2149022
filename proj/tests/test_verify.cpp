#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "syzygy/curves.hpp"
#include "syzygy/random.hpp"
#include "syzygy/verify.hpp"

using namespace syzygy;

namespace {

std::vector<int> keys(const std::map<int, std::size_t>& row) {
  std::vector<int> out;
  for (const auto& kv : row) out.push_back(kv.first);
  return out;
}

bool all_zero(const std::map<int, std::size_t>& row) {
  return std::all_of(row.begin(), row.end(), [](const auto& kv) { return kv.second == 0; });
}

VerificationReport without_time(VerificationReport r) {
  r.elapsed_ms = 0;
  return r;
}

// The same points the harness samples, as a V × H^0(2L) table.
MultiplicationTable ambient_table(int e, int alpha, int beta, std::size_t gamma, std::uint64_t seed,
                                  const PrimeField& f) {
  const HirzebruchSurface s(e);
  const PointSet pts = random_points(s, gamma, f, derive_seed(seed, 0));
  const TruncatedModule m = blowup_section_module(s, {alpha, beta}, pts, f);
  const auto& a1 = m.piece[0].numerator;
  return MultiplicationTable::from_function(f, a1.size(), m.piece[1].ambient_dim, [&](std::size_t i, std::size_t j) {
    return to_sparse(m.multiply_11(a1[i], a1[j]));
  });
}

// Brute force over a box of m: every admissible (m, γ), smallest m first.
std::optional<Plan> brute_force_plan(int k, long long g) {
  if (k < 4 || 2 * g < static_cast<long long>(k) * (k - 1)) return std::nullopt;
  for (int m = k + 2; m < k + 2 + 200; ++m) {
    for (long long gamma = 0; gamma <= m - 3; ++gamma) {
      // 2g = (k−1)(2m−2−k) − 2γ avoids the half-integer.
      if (static_cast<long long>(k - 1) * (2 * m - 2 - k) - 2 * gamma == 2 * g) return Plan{m, gamma};
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("blown-up surface rows vanish on small examples") {
  const PrimeField f;
  const VerificationReport a = verify_theorem2(1, 2, 3, 0, f, 1);
  CHECK(a.verdict == Verdict::verified);
  CHECK(a.h0 == 9);
  CHECK(keys(a.betti_q1) == std::vector<int>{6, 7});
  CHECK(all_zero(a.betti_q1));

  const VerificationReport b = verify_theorem2(1, 2, 3, 2, f, 1);
  CHECK(b.verdict == Verdict::verified);
  CHECK(b.h0 == 7);
  CHECK(keys(b.betti_q1) == std::vector<int>{4, 5});
  for (const auto* r : {&a, &b}) {
    CHECK(r->independence);
    CHECK(r->d1_injective);
    CHECK(r->d2_d1_zero);
  }
}

TEST_CASE("surface hypothesis gate") {
  const PrimeField f;
  // On Σ_0 the bound is γ ≤ β + α = 4.
  CHECK(verify_theorem2(0, 2, 2, 4, f, 1).verdict == Verdict::verified);
  const VerificationReport r = verify_theorem2(0, 2, 2, 5, f, 1);
  CHECK(r.verdict == Verdict::hypothesis_failure);
  CHECK_FALSE(r.hypotheses_hold());
  CHECK(r.betti_q1.empty());
  CHECK(r.message.find("gamma") != std::string::npos);
  CHECK(verify_theorem2(1, 2, 3, 99, f, 1).verdict == Verdict::hypothesis_failure);
  CHECK(verify_theorem2(2, 2, 3, 0, f, 1).verdict == Verdict::hypothesis_failure);
  CHECK(verify_theorem2(1, 1, 3, 0, f, 1).verdict == Verdict::hypothesis_failure);
}

TEST_CASE("sharpness value matches the dense oracle and stays out of the verdict") {
  const PrimeField f;
  VerifyOptions opt;
  opt.sharpness = true;
  for (const auto& [e, alpha, beta, gamma] : {std::tuple{0, 2, 2, 4}, std::tuple{1, 2, 3, 2}}) {
    const VerificationReport r = verify_theorem2(e, alpha, beta, gamma, f, 3, opt);
    CHECK(r.verdict == Verdict::verified);
    REQUIRE(r.informational.size() == 1);
    const auto [p, dim] = *r.informational.begin();
    CHECK(p == r.threshold - 1);
    const MultiplicationTable t = ambient_table(e, alpha, beta, static_cast<std::size_t>(gamma), 3, f);
    CHECK(dim == oracle::oracle_k_p1(t, static_cast<unsigned>(p)));
    // The claimed range against the oracle as well.
    for (const auto& [q, d] : r.betti_q1) CHECK(d == oracle::oracle_k_p1(t, static_cast<unsigned>(q)));
  }
}

TEST_CASE("nodal canonical instances") {
  const PrimeField f;
  const VerificationReport g6 = verify_corollary4(1, 4, 6, 3, f, 7);
  CHECK(g6.verdict == Verdict::verified);
  CHECK(g6.h0 == 6);
  CHECK(g6.threshold == 3);
  CHECK(keys(g6.betti_q1) == std::vector<int>{3, 4});
  CHECK(all_zero(g6.betti_q1));
  REQUIRE(g6.informational.count(2) == 1);
  CHECK(g6.informational.at(2) > 0);

  const VerificationReport g7 = verify_corollary4(1, 4, 6, 2, f, 7);
  CHECK(g7.verdict == Verdict::verified);
  CHECK(g7.h0 == 7);
  CHECK(keys(g7.betti_q1) == std::vector<int>{4, 5});

  const VerificationReport bad = verify_corollary4(1, 4, 6, 4, f, 7);
  CHECK(bad.verdict == Verdict::hypothesis_failure);
  CHECK(verify_corollary4(1, 3, 6, 0, f, 7).verdict == Verdict::hypothesis_failure);
}

TEST_CASE("reports are reproducible") {
  const PrimeField f;
  CHECK(without_time(verify_theorem2(1, 2, 3, 2, f, 42)) == without_time(verify_theorem2(1, 2, 3, 2, f, 42)));
  CHECK(without_time(verify_corollary4(1, 4, 6, 3, f, 7)) == without_time(verify_corollary4(1, 4, 6, 3, f, 7)));
}

TEST_CASE("planner") {
  CHECK(plan_theorem1(4, 6)->m == 6);
  CHECK(plan_theorem1(4, 6)->gamma == 3);
  CHECK(plan_theorem1(4, 7)->m == 6);
  CHECK(plan_theorem1(4, 7)->gamma == 2);
  CHECK(plan_theorem1(5, 10)->m == 7);
  CHECK(plan_theorem1(5, 10)->gamma == 4);
  CHECK_FALSE(plan_theorem1(4, 5).has_value());
  CHECK_FALSE(plan_theorem1(3, 10).has_value());
  for (int k = 4; k <= 10; ++k) {
    const long long g0 = static_cast<long long>(k) * (k - 1) / 2;
    for (long long g = g0; g <= g0 + 60; ++g) {
      const auto plan = plan_theorem1(k, g);
      const auto expected = brute_force_plan(k, g);
      REQUIRE(plan.has_value());
      REQUIRE(expected.has_value());
      CHECK(plan->m == expected->m);
      CHECK(plan->gamma == expected->gamma);
      CHECK(nodal_hypotheses_hold(1, k, plan->m, plan->gamma));
      CHECK(nodal_genus(1, k, plan->m, plan->gamma) == g);
    }
  }
}

TEST_CASE("curve versus surface vanishing inequality") {
  CHECK(remark3_inequality(1, 2, 3));
  CHECK_FALSE(remark3_inequality(2, 2, 3));
  CHECK(remark3_inequality(0, 3, 3));
}

TEST_CASE("surface row against a smooth member") {
  const PrimeField f;
  const VerificationReport r = compare_surface_curve(1, 2, 3, 2, f, 1);
  CHECK(r.verdict == Verdict::verified);
  CHECK(keys(r.betti_q1) == std::vector<int>{4, 5});
  CHECK(keys(r.curve_q1) == std::vector<int>{4, 5});
  CHECK(all_zero(r.betti_q1));
  CHECK(all_zero(r.curve_q1));
  CHECK(compare_surface_curve(1, 2, 3, 2, f, 2).verdict == r.verdict);

  // No points: the curve row equals the dense row of a smooth member.
  const VerificationReport c = compare_surface_curve(1, 2, 3, 0, f, 5);
  CHECK(c.verdict == Verdict::verified);
  const HirzebruchSurface s(1);
  const PointSet none = random_points(s, 0, f, derive_seed(5, 0));
  const RestrictedCurve y = restrict_to_curve(s, 2, 3, none, f, derive_seed(5, 3));
  const MultiplicationTable t = module_table(y.module);
  for (const auto& [p, dim] : c.curve_q1) CHECK(dim == oracle::oracle_k_p1(t, static_cast<unsigned>(p)));
}

TEST_CASE("grids") {
  GridConfig empty;
  empty.seeds = {1};
  CHECK(run_grid(empty).empty());
  CHECK(aggregate_exit_code({}) == 0);

  GridConfig config;
  config.items = {{"thm2", {1, 2, 3, 0}}, {"thm2", {1, 2, 3, 99}}, {"cor4", {1, 4, 6, 3}}, {"thm2", {1, 2}}};
  config.seeds = {1, 2};
  const auto reports = run_grid(config);
  REQUIRE(reports.size() == 8);
  CHECK(reports[0].verdict == Verdict::verified);
  CHECK(reports[1].verdict == Verdict::verified);
  CHECK(reports[2].verdict == Verdict::hypothesis_failure);
  CHECK(reports[4].verdict == Verdict::verified);
  CHECK(reports[6].verdict == Verdict::error);
  CHECK(aggregate_exit_code(reports) == 1);

  VerificationReport violated;
  violated.verdict = Verdict::violated;
  VerificationReport special;
  special.verdict = Verdict::genericity_failure;
  CHECK(aggregate_exit_code({reports[0], special}) == 3);
  CHECK(aggregate_exit_code({special, violated, reports[2]}) == 2);
}

TEST_CASE("acceptance grid shape") {
  const auto items = theorem2_acceptance_grid();
  std::size_t count = 0;
  for (int e = 0; e <= 2; ++e)
    for (int alpha = 2; alpha <= 3; ++alpha)
      for (int beta = std::max(alpha * e, alpha + e), top = beta + 2; beta <= top; ++beta) count += beta - (e - 1) * alpha + 1;
  CHECK(items.size() == count);
  for (const auto& it : items) CHECK(theorem2_hypotheses_hold(static_cast<int>(it.params[0]), static_cast<int>(it.params[1]),
                                                               static_cast<int>(it.params[2]), it.params[3]));
}

TEST_CASE("verdict names round-trip") {
  for (Verdict v : {Verdict::verified, Verdict::violated, Verdict::genericity_failure, Verdict::hypothesis_failure,
                    Verdict::error})
    CHECK(verdict_from_string(to_string(v)) == v);
  CHECK_THROWS_AS(verdict_from_string("maybe"), std::invalid_argument);
}
