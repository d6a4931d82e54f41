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

#ifndef FAIRSEL_MODEL_H_
#define FAIRSEL_MODEL_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace fairsel {

// A candidate solution. For set families the items are listed in increasing
// order; for ordered families the position in the vector is the rank.
using Selection = std::vector<int>;

struct GroupStructure {
  int num_groups = 0;
  // membership[t] lists the items of group t. Groups may overlap.
  std::vector<std::vector<int>> membership;
};

// ---- Utility catalog ----

struct ModularSpec {
  std::vector<double> weights;  // one nonnegative weight per item
};

struct WeightedCoverageSpec {
  std::vector<double> element_weights;     // nonnegative ground-element weights
  std::vector<std::vector<int>> covers;    // covers[i] = elements item i covers
};

// |S intersect group| for one group.
struct GroupCountSpec {
  int group = 0;
};

// Expected revenue under a multinomial-logit choice over the offered set:
//   sum_{i in S} revenue[i] * weight[i] / (no_purchase_weight + sum_{i in S} weight[i])
struct MnlRevenueSpec {
  std::vector<double> revenue;
  std::vector<double> weight;
  double no_purchase_weight = 1.0;
};

// Probability that the chosen item belongs to one group, under the same
// multinomial-logit model.
struct MnlGroupShareSpec {
  int group = 0;
  std::vector<double> weight;
  double no_purchase_weight = 1.0;
};

using BasicUtilitySpec = std::variant<ModularSpec, WeightedCoverageSpec,
                                      GroupCountSpec, MnlRevenueSpec,
                                      MnlGroupShareSpec>;

// Position-discounted composite over an ordered selection: level l applies a
// component utility to the first l items and scales it by level_weight[l-1].
struct SequentialLevel {
  double weight = 0.0;
  BasicUtilitySpec component;
};

struct SequentialMixSpec {
  std::vector<SequentialLevel> levels;
};

using UtilitySpec = std::variant<ModularSpec, WeightedCoverageSpec,
                                 GroupCountSpec, MnlRevenueSpec,
                                 MnlGroupShareSpec, SequentialMixSpec>;

// ---- Feasible families ----

struct CardinalityFamily {
  int max_size = 1;  // all subsets with |S| <= max_size
};
struct AllSubsetsFamily {};
struct PermutationsFamily {};  // all orderings of the full item set

using FeasibleFamily =
    std::variant<CardinalityFamily, AllSubsetsFamily, PermutationsFamily>;

struct Instance {
  int num_items = 0;
  GroupStructure groups;
  UtilitySpec global;                    // f
  std::vector<UtilitySpec> group_utils;  // g_t, one per group
  FeasibleFamily family;

  int num_groups() const { return groups.num_groups; }
};

// ---- Fairness requirements on a randomized selection ----

struct LowerBoundsSpec {
  std::vector<double> alpha;  // E[g_t] >= alpha_t
};

struct BoxSpec {
  std::vector<double> alpha;  // alpha_t <= E[g_t] <= beta_t
  std::vector<double> beta;
};

struct PairwiseSpec {
  // E[g_t] - E[g_u] <= gamma[t][u] for every ordered pair t != u.
  // The diagonal is ignored.
  std::vector<std::vector<double>> gamma;
};

using FairnessSpec = std::variant<LowerBoundsSpec, BoxSpec, PairwiseSpec>;

// A sparse distribution over selections. Probabilities are nonnegative and
// sum to at most one; the remainder is the probability of selecting nothing.
struct SolutionDistribution {
  std::vector<std::pair<Selection, double>> support;

  double total_mass() const;
};

struct ExpectedUtilities {
  double global = 0.0;
  std::vector<double> groups;
};

// ---- Validation ----

struct Violation {
  std::string path;  // dotted field path, e.g. "group_utils[2].group"
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationResult validate_instance(const Instance& inst);
ValidationResult validate_fairness(const Instance& inst,
                                   const FairnessSpec& fairness);

// Thrown when an enumeration would exceed the caller's cap.
class FamilyTooLarge : public std::runtime_error {
 public:
  explicit FamilyTooLarge(const std::string& what) : std::runtime_error(what) {}
};

// ---- Evaluation and enumeration ----

// Number of selections in the feasible family, saturating at UINT64_MAX.
std::uint64_t feasible_family_size(const Instance& inst);

// True if sel is a member of the instance's feasible family (distinct valid
// items; sorted for set families; a full ordering for permutations).
bool selection_in_family(const Instance& inst, const Selection& sel);

// Evaluate one utility spec on a selection, without family checks. Order is
// significant only for SequentialMixSpec.
double eval_spec(const Instance& inst, const UtilitySpec& spec,
                 const Selection& sel);
double eval_basic_spec(const Instance& inst, const BasicUtilitySpec& spec,
                       const Selection& sel);

// f(sel) and g_t(sel). Throw std::invalid_argument when sel is outside the
// feasible family.
double eval_global(const Instance& inst, const Selection& sel);
double eval_group(const Instance& inst, int group, const Selection& sel);

// All feasible selections: sets ordered by size then lexicographically,
// permutations in lexicographic order. Throws FamilyTooLarge when the family
// size exceeds cap.
std::vector<Selection> enumerate_feasible(const Instance& inst,
                                          std::uint64_t cap);

ExpectedUtilities expected_utilities(const Instance& inst,
                                     const SolutionDistribution& dist);

// ---- Catalog classification used by oracle applicability checks ----

bool is_monotone_spec(const UtilitySpec& spec);
bool is_submodular_spec(const UtilitySpec& spec);

}  // namespace fairsel

#endif  // FAIRSEL_MODEL_H_
