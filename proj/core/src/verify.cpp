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

#include "fairsel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace fairsel {
namespace {

struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double real(double lo, double hi) {
    return lo + (hi - lo) * ((gen() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(gen() % static_cast<std::uint64_t>(
                                           hi - lo + 1));
  }

  std::mt19937_64 gen;
};

Selection random_subset(Rng& rng, int n, int size) {
  std::vector<int> items(n);
  std::iota(items.begin(), items.end(), 0);
  for (int i = 0; i < size; ++i) {
    const int j = rng.integer(i, n - 1);
    std::swap(items[i], items[j]);
  }
  Selection out(items.begin(), items.begin() + size);
  std::sort(out.begin(), out.end());
  return out;
}

Selection random_nonempty_subset(Rng& rng, int n) {
  Selection out;
  for (int i = 0; i < n; ++i) {
    if (rng.integer(0, 1) == 1) out.push_back(i);
  }
  if (out.empty()) out.push_back(rng.integer(0, n - 1));
  return out;
}

GroupStructure random_groups(Rng& rng, int n, int m) {
  GroupStructure groups;
  groups.num_groups = m;
  groups.membership.resize(m);
  for (int t = 0; t < m; ++t)
    groups.membership[t] = random_nonempty_subset(rng, n);
  return groups;
}

UtilitySpec random_modular(Rng& rng, int n) {
  ModularSpec spec;
  spec.weights.resize(n);
  for (double& w : spec.weights) w = rng.real(0.5, 5.0);
  return spec;
}

UtilitySpec random_coverage(Rng& rng, int n) {
  WeightedCoverageSpec spec;
  const int ne = rng.integer(n, 2 * n);
  spec.element_weights.resize(ne);
  for (double& w : spec.element_weights) w = rng.real(0.2, 2.0);
  spec.covers.resize(n);
  for (int i = 0; i < n; ++i) {
    const int count = rng.integer(1, std::min(3, ne));
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < count)
      chosen.insert(rng.integer(0, ne - 1));
    spec.covers[i].assign(chosen.begin(), chosen.end());
  }
  return spec;
}

// A two-set witness distribution with mass 0.9; any bounds derived from its
// expectations are feasible by construction.
SolutionDistribution witness_distribution(Rng& rng, const Instance& inst) {
  SolutionDistribution dist;
  if (std::holds_alternative<PermutationsFamily>(inst.family)) {
    for (double p : {0.5, 0.4}) {
      Selection perm = random_subset(rng, inst.num_items, inst.num_items);
      for (int i = inst.num_items - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.integer(0, i)]);
      dist.support.emplace_back(std::move(perm), p);
    }
    return dist;
  }
  int max_size = inst.num_items;
  if (const auto* card = std::get_if<CardinalityFamily>(&inst.family))
    max_size = std::max(1, card->max_size);
  for (double p : {0.5, 0.4}) {
    dist.support.emplace_back(
        random_subset(rng, inst.num_items, rng.integer(1, max_size)), p);
  }
  return dist;
}

std::vector<double> scaled_alphas(Rng& rng, const std::vector<double>& e) {
  std::vector<double> alpha(e.size());
  for (std::size_t t = 0; t < e.size(); ++t)
    alpha[t] = rng.real(0.5, 0.95) * e[t];
  return alpha;
}

GeneratedProblem lower_bounds_core(Rng& rng, bool coverage_only) {
  GeneratedProblem out;
  Instance& inst = out.instance;
  inst.num_items = rng.integer(4, 8);
  const int m = rng.integer(2, 3);
  inst.groups = random_groups(rng, inst.num_items, m);
  const bool coverage = coverage_only || rng.integer(0, 1) == 1;
  inst.global = coverage ? random_coverage(rng, inst.num_items)
                         : random_modular(rng, inst.num_items);
  for (int t = 0; t < m; ++t) inst.group_utils.push_back(GroupCountSpec{t});
  inst.family = CardinalityFamily{rng.integer(2, std::min(4, inst.num_items))};

  const SolutionDistribution witness = witness_distribution(rng, inst);
  const ExpectedUtilities e = expected_utilities(inst, witness);
  out.fairness = LowerBoundsSpec{scaled_alphas(rng, e.groups)};
  return out;
}

}  // namespace

BruteForceResult brute_force_optimum(const Instance& inst,
                                     const FairnessSpec& fairness,
                                     std::uint64_t cap) {
  const std::vector<Selection> candidates = enumerate_feasible(inst, cap);
  const LinearProgram lp =
      build_restricted_primal(inst, fairness, candidates, /*mu=*/1.0);
  const LpSolution sol = solve_lp(lp);
  BruteForceResult result;
  if (sol.status == LpStatus::kInfeasible) return result;
  if (sol.status != LpStatus::kOptimal)
    throw std::runtime_error("baseline distribution program did not solve");
  result.feasible = true;
  result.opt = sol.objective_value;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    if (sol.values[j] > 1e-12)
      result.distribution.support.emplace_back(candidates[j], sol.values[j]);
  }
  return result;
}

GuaranteeCheck check_guarantee(const Instance& inst,
                               const FairnessSpec& fairness,
                               const SolveReport& report, double opt,
                               double tol) {
  GuaranteeCheck check;
  check.opt = opt;

  const ExpectedUtilities expected =
      expected_utilities(inst, report.distribution);
  check.achieved = expected.global;

  auto clause = [&](const std::string& name, double slack) {
    check.clauses.push_back({name, slack >= 0.0, slack});
  };

  const double mass = report.distribution.total_mass();
  clause("probability_mass", 1.0 + tol - mass);

  bool in_family = true;
  for (const auto& [sel, prob] : report.distribution.support) {
    if (!selection_in_family(inst, sel) || prob < 0.0) in_family = false;
  }
  check.clauses.push_back({"support_in_family", in_family,
                           in_family ? 0.0 : -1.0});

  const double rho = report.guarantee.rho;
  const double mu = report.guarantee.mu;
  clause("value_vs_optimum", expected.global - rho * opt + tol);
  clause("value_vs_upper_bound",
         report.upper_bound + tol - expected.global);

  if (const auto* lower = std::get_if<LowerBoundsSpec>(&fairness)) {
    for (std::size_t t = 0; t < lower->alpha.size(); ++t) {
      clause("lower_bound[" + std::to_string(t) + "]",
             expected.groups[t] - mu * lower->alpha[t] + tol);
    }
  } else if (const auto* box = std::get_if<BoxSpec>(&fairness)) {
    for (std::size_t t = 0; t < box->alpha.size(); ++t) {
      clause("lower_bound[" + std::to_string(t) + "]",
             expected.groups[t] - mu * box->alpha[t] + tol);
      clause("upper_bound[" + std::to_string(t) + "]",
             box->beta[t] + tol - expected.groups[t]);
    }
  } else if (const auto* pair = std::get_if<PairwiseSpec>(&fairness)) {
    const int m = inst.num_groups();
    for (int t = 0; t < m; ++t) {
      for (int u = 0; u < m; ++u) {
        if (t == u) continue;
        clause("pair_gap[" + std::to_string(t) + "][" + std::to_string(u) +
                   "]",
               pair->gamma[t][u] + tol -
                   (expected.groups[t] - expected.groups[u]));
      }
    }
  }

  check.pass = std::all_of(check.clauses.begin(), check.clauses.end(),
                           [](const GuaranteeClause& c) { return c.pass; });
  return check;
}

SampleStats sample_distribution(const Instance& inst,
                                const SolutionDistribution& dist,
                                std::uint64_t trials, std::uint64_t seed) {
  const int m = inst.num_groups();
  SampleStats stats;
  stats.trials = trials;
  stats.group_means.assign(m, 0.0);
  stats.group_ses.assign(m, 0.0);
  if (trials == 0) return stats;

  // Values per support entry, plus the empty draw at the back.
  const std::size_t k = dist.support.size();
  std::vector<double> global(k + 1, 0.0);
  std::vector<std::vector<double>> groups(k + 1, std::vector<double>(m, 0.0));
  std::vector<double> cumulative(k, 0.0);
  double acc = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const Selection& sel = dist.support[j].first;
    global[j] = eval_spec(inst, inst.global, sel);
    for (int t = 0; t < m; ++t)
      groups[j][t] = eval_spec(inst, inst.group_utils[t], sel);
    acc += dist.support[j].second;
    cumulative[j] = acc;
  }
  global[k] = eval_spec(inst, inst.global, {});
  for (int t = 0; t < m; ++t)
    groups[k][t] = eval_spec(inst, inst.group_utils[t], {});

  std::mt19937_64 gen(seed);
  double sum_g = 0.0, sumsq_g = 0.0;
  std::vector<double> sum_t(m, 0.0), sumsq_t(m, 0.0);
  for (std::uint64_t i = 0; i < trials; ++i) {
    const double u = (gen() >> 11) * 0x1.0p-53;
    const std::size_t j =
        std::upper_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin();
    sum_g += global[j];
    sumsq_g += global[j] * global[j];
    for (int t = 0; t < m; ++t) {
      sum_t[t] += groups[j][t];
      sumsq_t[t] += groups[j][t] * groups[j][t];
    }
  }

  const double n = static_cast<double>(trials);
  auto finish = [&](double sum, double sumsq, double& mean, double& se) {
    mean = sum / n;
    if (trials > 1) {
      const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
      se = std::sqrt(var / n);
    }
  };
  finish(sum_g, sumsq_g, stats.global_mean, stats.global_se);
  for (int t = 0; t < m; ++t)
    finish(sum_t[t], sumsq_t[t], stats.group_means[t], stats.group_ses[t]);
  return stats;
}

double oracle_cross_check(const Instance& inst, const WeightedQuery& query,
                          const FairMaxOracle& oracle, std::uint64_t cap) {
  const double exact = fairmax_exact(inst, query, cap).value;
  const double got = oracle.query(query).value;
  if (std::abs(exact) < 1e-12) return 1.0;
  return got / exact;
}

GeneratedProblem make_lower_bounds_problem(std::uint64_t seed) {
  Rng rng(seed * 2654435761u + 1);
  return lower_bounds_core(rng, /*coverage_only=*/false);
}

GeneratedProblem make_coverage_problem(std::uint64_t seed) {
  Rng rng(seed * 2654435761u + 2);
  return lower_bounds_core(rng, /*coverage_only=*/true);
}

GeneratedProblem make_box_problem(std::uint64_t seed) {
  Rng rng(seed * 2654435761u + 3);
  GeneratedProblem out = lower_bounds_core(rng, /*coverage_only=*/false);
  const SolutionDistribution witness =
      witness_distribution(rng, out.instance);
  const ExpectedUtilities e = expected_utilities(out.instance, witness);
  BoxSpec box;
  box.alpha.resize(e.groups.size());
  box.beta.resize(e.groups.size());
  for (std::size_t t = 0; t < e.groups.size(); ++t) {
    box.alpha[t] = 0.85 * e.groups[t];
    box.beta[t] = 1.15 * e.groups[t] + 0.1;
  }
  out.fairness = std::move(box);
  return out;
}

GeneratedProblem make_pairwise_problem(std::uint64_t seed) {
  Rng rng(seed * 2654435761u + 4);
  GeneratedProblem out = lower_bounds_core(rng, /*coverage_only=*/false);
  const SolutionDistribution witness =
      witness_distribution(rng, out.instance);
  const ExpectedUtilities e = expected_utilities(out.instance, witness);
  const int m = static_cast<int>(e.groups.size());
  PairwiseSpec pair;
  pair.gamma.assign(m, std::vector<double>(m, 0.0));
  for (int t = 0; t < m; ++t) {
    for (int u = 0; u < m; ++u) {
      if (t == u) continue;
      pair.gamma[t][u] =
          std::max(0.0, e.groups[t] - e.groups[u]) + rng.real(0.05, 0.3);
    }
  }
  out.fairness = std::move(pair);
  return out;
}

GeneratedProblem make_assortment_problem(std::uint64_t seed, int num_items) {
  Rng rng(seed * 2654435761u + 5);
  GeneratedProblem out;
  Instance& inst = out.instance;
  inst.num_items = num_items;
  const int m = rng.integer(2, 3);
  inst.groups.num_groups = m;
  inst.groups.membership.resize(m);
  for (int i = 0; i < num_items; ++i) {
    const int t = i < m ? i : rng.integer(0, m - 1);
    inst.groups.membership[t].push_back(i);
  }

  MnlRevenueSpec revenue;
  revenue.revenue.resize(num_items);
  revenue.weight.resize(num_items);
  for (int i = 0; i < num_items; ++i) {
    revenue.revenue[i] = rng.real(0.5, 10.0);
    revenue.weight[i] = rng.real(0.3, 2.0);
  }
  revenue.no_purchase_weight = rng.real(0.5, 2.0);
  for (int t = 0; t < m; ++t) {
    MnlGroupShareSpec share;
    share.group = t;
    share.weight = revenue.weight;
    share.no_purchase_weight = revenue.no_purchase_weight;
    inst.group_utils.push_back(std::move(share));
  }
  inst.global = std::move(revenue);
  inst.family = AllSubsetsFamily{};

  SolutionDistribution witness;
  witness.support.emplace_back(random_nonempty_subset(rng, num_items), 0.5);
  witness.support.emplace_back(random_nonempty_subset(rng, num_items), 0.4);
  const ExpectedUtilities e = expected_utilities(inst, witness);
  out.fairness = LowerBoundsSpec{scaled_alphas(rng, e.groups)};
  return out;
}

GeneratedProblem make_ordering_problem(std::uint64_t seed, int num_items) {
  Rng rng(seed * 2654435761u + 6);
  GeneratedProblem out;
  Instance& inst = out.instance;
  inst.num_items = num_items;
  const int m = 2;
  inst.groups.num_groups = m;
  inst.groups.membership.resize(m);
  for (int i = 0; i < num_items; ++i) {
    const int t = i < m ? i : rng.integer(0, m - 1);
    inst.groups.membership[t].push_back(i);
  }

  const int num_levels = rng.integer(2, std::min(3, num_items));
  SequentialMixSpec global;
  for (int l = 0; l < num_levels; ++l) {
    SequentialLevel level;
    level.weight = rng.real(0.3, 1.0);
    switch (rng.integer(0, 2)) {
      case 0: {
        ModularSpec mod;
        mod.weights.resize(num_items);
        for (double& w : mod.weights) w = rng.real(0.5, 3.0);
        level.component = std::move(mod);
        break;
      }
      case 1:
        level.component =
            std::get<WeightedCoverageSpec>(random_coverage(rng, num_items));
        break;
      default:
        level.component = GroupCountSpec{rng.integer(0, m - 1)};
    }
    global.levels.push_back(std::move(level));
  }
  inst.global = std::move(global);

  for (int t = 0; t < m; ++t) {
    SequentialMixSpec spec;
    for (int l = 0; l < num_levels; ++l) {
      SequentialLevel level;
      level.weight = rng.real(0.3, 1.0);
      level.component = GroupCountSpec{t};
      spec.levels.push_back(std::move(level));
    }
    inst.group_utils.push_back(std::move(spec));
  }
  inst.family = PermutationsFamily{};

  const SolutionDistribution witness = witness_distribution(rng, inst);
  const ExpectedUtilities e = expected_utilities(inst, witness);
  out.fairness = LowerBoundsSpec{scaled_alphas(rng, e.groups)};
  return out;
}

GeneratedProblem make_unsatisfiable_problem(std::uint64_t seed) {
  Rng rng(seed * 2654435761u + 7);
  GeneratedProblem out = lower_bounds_core(rng, /*coverage_only=*/false);
  const std::vector<Selection> all =
      enumerate_feasible(out.instance, std::uint64_t{1} << 16);
  const int m = out.instance.num_groups();
  std::vector<double> alpha(m, 0.0);
  for (const Selection& sel : all) {
    for (int t = 0; t < m; ++t) {
      alpha[t] = std::max(
          alpha[t], eval_spec(out.instance, out.instance.group_utils[t], sel));
    }
  }
  for (double& a : alpha) a += 1.0;
  out.fairness = LowerBoundsSpec{std::move(alpha)};
  return out;
}

WeightedQuery random_query(std::uint64_t seed, int num_groups, double scale) {
  Rng rng(seed * 2654435761u + 8);
  WeightedQuery query;
  query.coeffs.resize(num_groups);
  for (double& c : query.coeffs) c = rng.real(0.0, scale);
  return query;
}

}  // namespace fairsel
