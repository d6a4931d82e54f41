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

#ifndef FAIRSEL_VERIFY_H_
#define FAIRSEL_VERIFY_H_

#include <cstdint>
#include <string>

#include "fairsel/lp.hpp"
#include "fairsel/model.hpp"
#include "fairsel/oracle.hpp"
#include "fairsel/solver.hpp"

namespace fairsel {

struct BruteForceResult {
  bool feasible = false;
  double opt = 0.0;
  SolutionDistribution distribution;
};

// Full distribution LP over the entire feasible family with unrelaxed
// bounds. Throws FamilyTooLarge above the cap.
BruteForceResult brute_force_optimum(const Instance& inst,
                                     const FairnessSpec& fairness,
                                     std::uint64_t cap);

struct GuaranteeClause {
  std::string name;
  bool pass = false;
  double slack = 0.0;  // distance to the boundary; negative means violated
};

struct GuaranteeCheck {
  bool pass = false;
  double opt = 0.0;
  double achieved = 0.0;
  std::vector<GuaranteeClause> clauses;
};

// Recomputes the report's expectations from its distribution and checks the
// approximation and fairness guarantees against a known optimum.
GuaranteeCheck check_guarantee(const Instance& inst,
                               const FairnessSpec& fairness,
                               const SolveReport& report, double opt,
                               double tol);

struct SampleStats {
  std::uint64_t trials = 0;
  double global_mean = 0.0;
  double global_se = 0.0;
  std::vector<double> group_means;
  std::vector<double> group_ses;
};

// Monte-Carlo check of a distribution: draws selections (residual mass draws
// nothing) and reports means with standard errors.
SampleStats sample_distribution(const Instance& inst,
                                const SolutionDistribution& dist,
                                std::uint64_t trials, std::uint64_t seed);

// Ratio of the oracle's composite value to the enumerated optimum for one
// query; 1 when the optimum is indistinguishable from zero.
double oracle_cross_check(const Instance& inst, const WeightedQuery& query,
                          const FairMaxOracle& oracle, std::uint64_t cap);

// ---- Seeded problem generators for randomized harnesses ----

struct GeneratedProblem {
  Instance instance;
  FairnessSpec fairness;
};

// Modular or coverage objective, group-count utilities, cardinality family,
// lower bounds certified feasible by a witness distribution.
GeneratedProblem make_lower_bounds_problem(std::uint64_t seed);
// Coverage objective only (the class the lazy greedy oracle accepts).
GeneratedProblem make_coverage_problem(std::uint64_t seed);
GeneratedProblem make_box_problem(std::uint64_t seed);
GeneratedProblem make_pairwise_problem(std::uint64_t seed);
// Choice-model instance over all subsets with share lower bounds.
GeneratedProblem make_assortment_problem(std::uint64_t seed, int num_items);
// Position-discounted instance over permutations.
GeneratedProblem make_ordering_problem(std::uint64_t seed, int num_items);
// Lower bounds above anything the family can reach.
GeneratedProblem make_unsatisfiable_problem(std::uint64_t seed);

// A coefficient vector with entries in [0, scale).
WeightedQuery random_query(std::uint64_t seed, int num_groups, double scale);

}  // namespace fairsel

#endif  // FAIRSEL_VERIFY_H_
