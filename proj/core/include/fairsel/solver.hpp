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

#ifndef FAIRSEL_SOLVER_H_
#define FAIRSEL_SOLVER_H_

#include <optional>
#include <utility>

#include "fairsel/ellipsoid.hpp"
#include "fairsel/lp.hpp"
#include "fairsel/oracle.hpp"
#include "fairsel/variant.hpp"

namespace fairsel {

struct SolveConfig {
  // Width at which the search over the dual objective level stops.
  double epsilon = 1e-6;
  // Initial ellipsoid radius; 0 picks a heuristic from oracle probes.
  double radius = 0.0;
  long max_iterations = -1;  // per feasibility run; <0 derives a cap
  double radius_floor_rel = 1e-7;
  // Candidate support comes from the deepest empty run by default; this
  // switches to the union of set cuts across every run.
  bool collect_all_runs = false;
  std::optional<std::pair<double, double>> bracket;  // override [lo, hi]
  // Level probed to distinguish an unbounded dual from a merely small one;
  // 0 derives -10 * (|hi| + 1).
  double infeasible_probe_level = 0.0;
  double lp_tol = 1e-8;
  OracleConfig oracle;
};

class SolveError : public std::runtime_error {
 public:
  enum class Code {
    kInfeasibleFairness,      // no distribution satisfies the requirement
    kRestrictedLpInfeasible,  // candidate support cannot carry the bounds
    kNumericalBreakdown,
  };

  SolveError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct SolveReport {
  SolutionDistribution distribution;
  double l_star = 0.0;
  std::vector<Selection> f_prime;  // candidate support fed to the final LP
  OracleGuarantee guarantee;
  double expected_global = 0.0;
  std::vector<double> expected_groups;
  double upper_bound = 0.0;  // l_star / rho bounds the unrelaxed optimum
  double epsilon = 0.0;
  DualPoint dual_witness;
  Selection witness_selection;
};

struct BracketResult {
  double l_star = 0.0;
  std::vector<Selection> f_prime;
  DualPoint dual_witness;
  Selection witness_selection;
  FeasibilityDiagnostics last_empty_diagnostics;
};

// Heuristic initial radius covering the analytic dual witnesses implied by
// the oracle's value range.
double default_radius(const Instance& inst, const Variant& variant,
                      const FairMaxOracle& oracle);

// Bisects the dual objective level: l_star is the smallest probed level
// whose level set was marked non-empty; the candidate support comes from the
// deepest level marked empty. Throws SolveError(kInfeasibleFairness) when
// even the infeasibility probe level is marked non-empty.
BracketResult binary_search_level(const Instance& inst, const Variant& variant,
                                  const FairMaxOracle& oracle,
                                  const SolveConfig& config);

SolveReport solve_with_oracle(const Instance& inst,
                              const FairnessSpec& fairness,
                              const FairMaxOracle& oracle,
                              const SolveConfig& config = {});

// Validates, binds the named oracle, and runs the full pipeline.
SolveReport solve(const Instance& inst, const FairnessSpec& fairness,
                  OracleKind oracle_kind, const SolveConfig& config = {});

}  // namespace fairsel

#endif  // FAIRSEL_SOLVER_H_
