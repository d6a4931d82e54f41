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

#include "fairsel/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace fairsel {
namespace {

std::string first_violation(const ValidationResult& result) {
  const Violation& v = result.violations.front();
  return v.path + ": " + v.message;
}

}  // namespace

double default_radius(const Instance& inst, const Variant& variant,
                      const FairMaxOracle& oracle) {
  const int m = inst.num_groups();
  const OracleGuarantee guarantee = oracle.guarantee();

  // Probe the oracle's value range: the zero query bounds max f, and each
  // unit query bounds max f + max g_t.
  WeightedQuery query{std::vector<double>(m, 0.0)};
  double vmax = std::max(0.0, oracle.query(query).value);
  for (int t = 0; t < m; ++t) {
    query.coeffs.assign(m, 0.0);
    query.coeffs[t] = 1.0;
    vmax = std::max(vmax, oracle.query(query).value);
  }
  const double level_hi = vmax / std::max(guarantee.rho, 1e-9);

  // Multipliers scale inversely with the tightest active bound.
  double denom = 1.0;
  bool any = false;
  auto note = [&](double bound) {
    if (bound > 0.0) {
      denom = any ? std::min(denom, bound) : bound;
      any = true;
    }
  };
  if (const auto* lower = std::get_if<LowerBoundsSpec>(&variant.fairness())) {
    for (double a : lower->alpha) note(guarantee.mu * a);
  } else if (const auto* box = std::get_if<BoxSpec>(&variant.fairness())) {
    for (double a : box->alpha) note(guarantee.mu * a);
    for (double b : box->beta) note(b);
  } else if (const auto* pair =
                 std::get_if<PairwiseSpec>(&variant.fairness())) {
    for (int t = 0; t < m; ++t) {
      for (int u = 0; u < m; ++u) {
        if (t != u) note(pair->gamma[t][u]);
      }
    }
  }
  denom = std::clamp(denom, 1e-6, 1.0);

  const int d = variant.dual_dimension();
  return 10.0 * d * (vmax + 1.0) * (level_hi + 1.0) / denom;
}

BracketResult binary_search_level(const Instance& inst, const Variant& variant,
                                  const FairMaxOracle& oracle,
                                  const SolveConfig& config) {
  const int m = inst.num_groups();
  const OracleGuarantee guarantee = oracle.guarantee();

  FeasibilityConfig fcfg;
  fcfg.radius = config.radius > 0.0
                    ? config.radius
                    : default_radius(inst, variant, oracle);
  fcfg.max_iterations = config.max_iterations;
  fcfg.radius_floor_rel = config.radius_floor_rel;

  std::vector<Selection> all_sets;
  std::set<Selection> seen;
  auto run = [&](double level) {
    FeasibilityOutcome out =
        ellipsoid_feasible(level, variant, oracle, inst, fcfg);
    for (const Selection& sel : out.violated_sets) {
      if (seen.insert(sel).second) all_sets.push_back(sel);
    }
    return out;
  };

  double lo = 0.0, hi = 0.0;
  if (config.bracket.has_value()) {
    lo = config.bracket->first;
    hi = config.bracket->second;
    if (hi < lo) std::swap(lo, hi);
  } else {
    const WeightedQuery zeros{std::vector<double>(m, 0.0)};
    hi = std::max(0.0, oracle.query(zeros).value) /
         std::max(guarantee.rho, 1e-9);
  }

  FeasibilityOutcome lo_out = run(lo);
  FeasibilityOutcome hi_out;
  if (lo_out.non_empty) {
    // The dual already reaches lo; decide between a small optimum and an
    // unbounded dual (an unsatisfiable requirement).
    double probe = config.infeasible_probe_level != 0.0
                       ? config.infeasible_probe_level
                       : -10.0 * (std::abs(hi) + 1.0);
    if (probe >= lo) probe = lo - 10.0 * (std::abs(lo) + 1.0);
    FeasibilityOutcome probe_out = run(probe);
    if (probe_out.non_empty) {
      throw SolveError(SolveError::Code::kInfeasibleFairness,
                       "the fairness requirement admits no distribution: the "
                       "dual objective is unbounded below");
    }
    hi = lo;
    hi_out = std::move(lo_out);
    lo = probe;
    lo_out = std::move(probe_out);
  } else {
    if (hi <= lo) hi = lo + 1.0;
    hi_out = run(hi);
    int doublings = 0;
    while (!hi_out.non_empty) {
      if (++doublings > 30) {
        throw SolveError(SolveError::Code::kNumericalBreakdown,
                         "no level with a nonempty dual level set was found");
      }
      lo = hi;
      lo_out = std::move(hi_out);
      hi = 2.0 * hi + 1.0;
      hi_out = run(hi);
    }
  }

  while (hi - lo > config.epsilon) {
    const double mid = 0.5 * (lo + hi);
    FeasibilityOutcome mid_out = run(mid);
    if (mid_out.non_empty) {
      hi = mid;
      hi_out = std::move(mid_out);
    } else {
      lo = mid;
      lo_out = std::move(mid_out);
    }
  }

  BracketResult result;
  result.l_star = hi;
  result.dual_witness = hi_out.witness;
  result.witness_selection = hi_out.certificate.selection;
  result.f_prime =
      config.collect_all_runs ? std::move(all_sets) : lo_out.violated_sets;
  result.last_empty_diagnostics = lo_out.diagnostics;
  return result;
}

SolveReport solve_with_oracle(const Instance& inst,
                              const FairnessSpec& fairness,
                              const FairMaxOracle& oracle,
                              const SolveConfig& config) {
  ValidationResult vi = validate_instance(inst);
  if (!vi.ok())
    throw std::invalid_argument("invalid instance: " + first_violation(vi));
  const Variant variant = Variant::from_fairness(inst, fairness);

  const OracleGuarantee guarantee = oracle.guarantee();
  if (variant.needs_signed_coeffs() && !guarantee.accepts_negative_coeffs) {
    throw OracleError(
        std::string("the ") + oracle_kind_name(oracle.kind()) +
        " oracle only accepts nonnegative coefficients, but box and pairwise "
        "requirements query signed ones; use exact enumeration");
  }

  BracketResult bracket = binary_search_level(inst, variant, oracle, config);

  LinearProgram lp =
      build_restricted_primal(inst, fairness, bracket.f_prime, guarantee.mu);
  LpSolution sol = solve_lp(lp, config.lp_tol);
  if (sol.status == LpStatus::kInfeasible) {
    // Nudge the fairness right-hand sides outward once before giving up;
    // the candidate support can miss feasibility by solver roundoff.
    LinearProgram relaxed = lp;
    for (std::size_t i = 0; i + 1 < relaxed.rows.size(); ++i) {
      auto& row = relaxed.rows[i];
      const double delta = 1e-6 * (1.0 + std::abs(row.rhs));
      if (row.rel == Relation::kGreaterEqual) row.rhs -= delta;
      if (row.rel == Relation::kLessEqual) row.rhs += delta;
    }
    sol = solve_lp(relaxed, config.lp_tol);
    if (sol.status == LpStatus::kInfeasible) {
      throw SolveError(SolveError::Code::kRestrictedLpInfeasible,
                       "the candidate support admits no distribution within "
                       "the relaxed bounds");
    }
  }
  if (sol.status != LpStatus::kOptimal) {
    throw SolveError(SolveError::Code::kNumericalBreakdown,
                     "the restricted distribution program did not solve");
  }

  SolveReport report;
  for (std::size_t j = 0; j < bracket.f_prime.size(); ++j) {
    const double p = sol.values[j];
    if (p > 1e-12)
      report.distribution.support.emplace_back(bracket.f_prime[j],
                                               std::min(p, 1.0));
  }
  const double mass = report.distribution.total_mass();
  if (mass > 1.0) {
    for (auto& [sel, p] : report.distribution.support) p /= mass;
  }

  const ExpectedUtilities expected =
      expected_utilities(inst, report.distribution);
  report.l_star = bracket.l_star;
  report.f_prime = std::move(bracket.f_prime);
  report.guarantee = guarantee;
  report.expected_global = expected.global;
  report.expected_groups = expected.groups;
  report.upper_bound = bracket.l_star / std::max(guarantee.rho, 1e-9);
  report.epsilon = config.epsilon;
  report.dual_witness = std::move(bracket.dual_witness);
  report.witness_selection = std::move(bracket.witness_selection);
  return report;
}

SolveReport solve(const Instance& inst, const FairnessSpec& fairness,
                  OracleKind oracle_kind, const SolveConfig& config) {
  ValidationResult vi = validate_instance(inst);
  if (!vi.ok())
    throw std::invalid_argument("invalid instance: " + first_violation(vi));
  ValidationResult vf = validate_fairness(inst, fairness);
  if (!vf.ok())
    throw std::invalid_argument("invalid fairness requirement: " +
                                first_violation(vf));
  std::unique_ptr<FairMaxOracle> oracle =
      make_oracle(oracle_kind, inst, config.oracle);
  return solve_with_oracle(inst, fairness, *oracle, config);
}

}  // namespace fairsel
