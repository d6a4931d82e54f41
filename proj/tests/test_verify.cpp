// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fairsel/model.hpp"
#include "fairsel/oracle.hpp"
#include "fairsel/solver.hpp"
#include "fairsel/verify.hpp"

using namespace fairsel;

namespace {

Instance small_instance() {
  Instance inst;
  inst.num_items = 3;
  inst.groups.num_groups = 2;
  inst.groups.membership = {{0}, {1, 2}};
  inst.global = ModularSpec{{3.0, 2.0, 1.0}};
  inst.group_utils = {UtilitySpec{GroupCountSpec{0}},
                      UtilitySpec{GroupCountSpec{1}}};
  inst.family = CardinalityFamily{2};
  return inst;
}

SolveConfig test_config() {
  SolveConfig config;
  config.epsilon = 1e-3;
  config.radius_floor_rel = 1e-9;
  return config;
}

const GuaranteeClause* find_clause(const GuaranteeCheck& check,
                                   const std::string& name) {
  for (const auto& c : check.clauses) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("baseline distribution optimum on the small instance") {
  Instance inst = small_instance();

  BruteForceResult loose =
      brute_force_optimum(inst, LowerBoundsSpec{{0.5, 1.0}}, 100);
  REQUIRE(loose.feasible);
  CHECK(loose.opt == doctest::Approx(5.0).epsilon(1e-9));

  BruteForceResult tight =
      brute_force_optimum(inst, LowerBoundsSpec{{0.5, 1.5}}, 100);
  REQUIRE(tight.feasible);
  CHECK(tight.opt == doctest::Approx(4.0).epsilon(1e-9));
  // The baseline's own distribution must satisfy what it claims.
  ExpectedUtilities e = expected_utilities(inst, tight.distribution);
  CHECK(e.global == doctest::Approx(tight.opt).epsilon(1e-9));
  CHECK(e.groups[0] >= 0.5 - 1e-8);
  CHECK(e.groups[1] >= 1.5 - 1e-8);

  CHECK_FALSE(
      brute_force_optimum(inst, LowerBoundsSpec{{1.0, 2.0}}, 100).feasible);
  CHECK_THROWS_AS(brute_force_optimum(inst, LowerBoundsSpec{{0.5, 1.0}}, 3),
                  FamilyTooLarge);
}

TEST_CASE("a genuine solve passes the guarantee audit") {
  Instance inst = small_instance();
  FairnessSpec fairness = LowerBoundsSpec{{0.5, 1.5}};
  SolveReport report = solve(inst, fairness, OracleKind::kExact,
                             test_config());
  BruteForceResult base = brute_force_optimum(inst, fairness, 100);

  GuaranteeCheck check =
      check_guarantee(inst, fairness, report, base.opt, 1e-3);
  CHECK(check.pass);
  CHECK(check.achieved == doctest::Approx(4.0).epsilon(2e-3));
  CHECK(find_clause(check, "probability_mass") != nullptr);
  CHECK(find_clause(check, "support_in_family") != nullptr);
  CHECK(find_clause(check, "value_vs_optimum") != nullptr);
  CHECK(find_clause(check, "value_vs_upper_bound") != nullptr);
  CHECK(find_clause(check, "lower_bound[0]") != nullptr);
  CHECK(find_clause(check, "lower_bound[1]") != nullptr);
  for (const auto& c : check.clauses) {
    CAPTURE(c.name);
    CHECK(c.pass);
    CHECK(c.slack >= 0.0);
  }
}

TEST_CASE("doctored reports fail the matching clause") {
  Instance inst = small_instance();
  FairnessSpec fairness = LowerBoundsSpec{{0.5, 1.5}};
  SolveReport honest = solve(inst, fairness, OracleKind::kExact,
                             test_config());
  const double opt = 4.0;

  SUBCASE("oversized mass") {
    SolveReport bad = honest;
    for (auto& [sel, p] : bad.distribution.support) p *= 1.5;
    GuaranteeCheck check = check_guarantee(inst, fairness, bad, opt, 1e-3);
    CHECK_FALSE(check.pass);
    CHECK_FALSE(find_clause(check, "probability_mass")->pass);
  }

  SUBCASE("support outside the family") {
    SolveReport bad = honest;
    bad.distribution.support.emplace_back(Selection{0, 1, 2}, 0.0);
    GuaranteeCheck check = check_guarantee(inst, fairness, bad, opt, 1e-3);
    CHECK_FALSE(check.pass);
    CHECK_FALSE(find_clause(check, "support_in_family")->pass);
  }

  SUBCASE("value short of the approximation bound") {
    SolveReport bad = honest;
    bad.distribution.support = {{Selection{2}, 0.5}};  // value 0.5 only
    GuaranteeCheck check = check_guarantee(inst, fairness, bad, opt, 1e-3);
    CHECK_FALSE(check.pass);
    CHECK_FALSE(find_clause(check, "value_vs_optimum")->pass);
    CHECK_FALSE(find_clause(check, "lower_bound[1]")->pass);
  }

  SUBCASE("claimed upper bound below the achieved value") {
    SolveReport bad = honest;
    bad.upper_bound = bad.expected_global - 1.0;
    GuaranteeCheck check = check_guarantee(inst, fairness, bad, opt, 1e-3);
    CHECK_FALSE(check.pass);
    CHECK_FALSE(find_clause(check, "value_vs_upper_bound")->pass);
  }
}

TEST_CASE("box and pairwise audits check their own clause families") {
  GeneratedProblem box_prob = make_box_problem(1);
  SolveReport box_report = solve(box_prob.instance, box_prob.fairness,
                                 OracleKind::kExact, test_config());
  BruteForceResult box_base =
      brute_force_optimum(box_prob.instance, box_prob.fairness, 1 << 20);
  GuaranteeCheck box_check = check_guarantee(
      box_prob.instance, box_prob.fairness, box_report, box_base.opt, 1e-3);
  CHECK(box_check.pass);
  CHECK(find_clause(box_check, "upper_bound[0]") != nullptr);

  GeneratedProblem pw_prob = make_pairwise_problem(1);
  SolveReport pw_report = solve(pw_prob.instance, pw_prob.fairness,
                                OracleKind::kExact, test_config());
  BruteForceResult pw_base =
      brute_force_optimum(pw_prob.instance, pw_prob.fairness, 1 << 20);
  GuaranteeCheck pw_check = check_guarantee(
      pw_prob.instance, pw_prob.fairness, pw_report, pw_base.opt, 1e-3);
  CHECK(pw_check.pass);
  CHECK(find_clause(pw_check, "pair_gap[0][1]") != nullptr);
  CHECK(find_clause(pw_check, "pair_gap[1][0]") != nullptr);
}

TEST_CASE("sampling reproduces expectations within standard errors") {
  Instance inst = small_instance();
  SolutionDistribution dist;
  dist.support = {{{0}, 0.5}, {{1}, 0.5}};

  SampleStats stats = sample_distribution(inst, dist, 200000, 42);
  CHECK(stats.trials == 200000);
  CHECK(stats.global_se > 0.0);
  CHECK(std::abs(stats.global_mean - 2.5) <= 4.0 * stats.global_se);
  CHECK(std::abs(stats.group_means[0] - 0.5) <= 4.0 * stats.group_ses[0]);
  CHECK(std::abs(stats.group_means[1] - 0.5) <= 4.0 * stats.group_ses[1]);

  // Residual mass draws an empty selection.
  SolutionDistribution partial;
  partial.support = {{{0, 1}, 0.25}};
  SampleStats sub = sample_distribution(inst, partial, 200000, 7);
  const ExpectedUtilities e = expected_utilities(inst, partial);
  CHECK(std::abs(sub.global_mean - e.global) <= 4.0 * sub.global_se);

  // Same seed, same draw sequence.
  SampleStats again = sample_distribution(inst, dist, 1000, 42);
  SampleStats twice = sample_distribution(inst, dist, 1000, 42);
  CHECK(again.global_mean == twice.global_mean);

  SampleStats zero = sample_distribution(inst, dist, 0, 42);
  CHECK(zero.global_mean == 0.0);
  CHECK(zero.global_se == 0.0);
}

TEST_CASE("oracle cross-check ratios") {
  Instance inst = small_instance();
  auto exact = make_oracle(OracleKind::kExact, inst);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(oracle_cross_check(inst, random_query(seed, 2, 2.0), *exact,
                             100) == 1.0);
  }

  GeneratedProblem cov = make_coverage_problem(5);
  auto greedy = make_oracle(OracleKind::kGreedy, cov.instance);
  const double ratio = 1.0 - 1.0 / std::numbers::e;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double r = oracle_cross_check(
        cov.instance, random_query(seed, cov.instance.num_groups(), 2.0),
        *greedy, 1 << 20);
    CHECK(r >= ratio - 1e-9);
    CHECK(r <= 1.0 + 1e-9);
  }
}

TEST_CASE("generated problems are well formed and honestly labeled") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    CAPTURE(seed);

    GeneratedProblem lower = make_lower_bounds_problem(seed);
    REQUIRE(validate_instance(lower.instance).ok());
    REQUIRE(validate_fairness(lower.instance, lower.fairness).ok());
    CHECK(brute_force_optimum(lower.instance, lower.fairness, 1 << 20)
              .feasible);

    GeneratedProblem cov = make_coverage_problem(seed);
    CHECK(std::holds_alternative<WeightedCoverageSpec>(cov.instance.global));
    CHECK(brute_force_optimum(cov.instance, cov.fairness, 1 << 20).feasible);

    GeneratedProblem box = make_box_problem(seed);
    REQUIRE(validate_fairness(box.instance, box.fairness).ok());
    CHECK(brute_force_optimum(box.instance, box.fairness, 1 << 20).feasible);

    GeneratedProblem pw = make_pairwise_problem(seed);
    REQUIRE(validate_fairness(pw.instance, pw.fairness).ok());
    CHECK(brute_force_optimum(pw.instance, pw.fairness, 1 << 20).feasible);

    GeneratedProblem mnl = make_assortment_problem(seed, 6);
    REQUIRE(validate_instance(mnl.instance).ok());
    CHECK(brute_force_optimum(mnl.instance, mnl.fairness, 1 << 20).feasible);

    GeneratedProblem ord = make_ordering_problem(seed, 4);
    REQUIRE(validate_instance(ord.instance).ok());
    CHECK(brute_force_optimum(ord.instance, ord.fairness, 1 << 20).feasible);

    GeneratedProblem bad = make_unsatisfiable_problem(seed);
    REQUIRE(validate_instance(bad.instance).ok());
    CHECK_FALSE(
        brute_force_optimum(bad.instance, bad.fairness, 1 << 20).feasible);
  }
}

TEST_CASE("random queries respect their scale") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    WeightedQuery q = random_query(seed, 4, 2.5);
    REQUIRE(q.coeffs.size() == 4);
    for (double c : q.coeffs) {
      CHECK(c >= 0.0);
      CHECK(c < 2.5);
    }
  }
  // Distinct seeds give distinct queries.
  CHECK(random_query(1, 3, 1.0).coeffs != random_query(2, 3, 1.0).coeffs);
}
