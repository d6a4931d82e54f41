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

#include "fairsel/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fairsel {
namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

std::uint64_t binom(int n, int j) {
  if (j < 0 || j > n) return 0;
  j = std::min(j, n - j);
  unsigned __int128 r = 1;
  for (int i = 1; i <= j; ++i) {
    r = r * static_cast<unsigned>(n - j + i) / static_cast<unsigned>(i);
    if (r > kU64Max) return kU64Max;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t factorial(int n) {
  unsigned __int128 r = 1;
  for (int i = 2; i <= n; ++i) {
    r *= static_cast<unsigned>(i);
    if (r > kU64Max) return kU64Max;
  }
  return static_cast<std::uint64_t>(r);
}

bool item_in_group(const GroupStructure& groups, int group, int item) {
  const auto& members = groups.membership[group];
  return std::find(members.begin(), members.end(), item) != members.end();
}

void check_items(const Instance& inst, const Selection& sel) {
  std::vector<char> seen(inst.num_items, 0);
  for (int item : sel) {
    if (item < 0 || item >= inst.num_items)
      throw std::invalid_argument("selection item " + std::to_string(item) +
                                  " out of range");
    if (seen[item])
      throw std::invalid_argument("selection repeats item " +
                                  std::to_string(item));
    seen[item] = 1;
  }
}

double eval_basic(const Instance& inst, const BasicUtilitySpec& spec,
                  const Selection& sel);

struct BasicEval {
  const Instance& inst;
  const Selection& sel;

  double operator()(const ModularSpec& s) const {
    double total = 0.0;
    for (int item : sel) total += s.weights[item];
    return total;
  }

  double operator()(const WeightedCoverageSpec& s) const {
    std::vector<char> covered(s.element_weights.size(), 0);
    double total = 0.0;
    for (int item : sel) {
      for (int e : s.covers[item]) {
        if (!covered[e]) {
          covered[e] = 1;
          total += s.element_weights[e];
        }
      }
    }
    return total;
  }

  double operator()(const GroupCountSpec& s) const {
    int count = 0;
    for (int item : sel) {
      if (item_in_group(inst.groups, s.group, item)) ++count;
    }
    return static_cast<double>(count);
  }

  double operator()(const MnlRevenueSpec& s) const {
    double denom = s.no_purchase_weight;
    double num = 0.0;
    for (int item : sel) {
      denom += s.weight[item];
      num += s.revenue[item] * s.weight[item];
    }
    return num / denom;
  }

  double operator()(const MnlGroupShareSpec& s) const {
    double denom = s.no_purchase_weight;
    double num = 0.0;
    for (int item : sel) {
      denom += s.weight[item];
      if (item_in_group(inst.groups, s.group, item)) num += s.weight[item];
    }
    return num / denom;
  }
};

double eval_basic(const Instance& inst, const BasicUtilitySpec& spec,
                  const Selection& sel) {
  return std::visit(BasicEval{inst, sel}, spec);
}

// ---- Spec validation helpers ----

void require(std::vector<Violation>& out, bool cond, const std::string& path,
             const std::string& message) {
  if (!cond) out.push_back({path, message});
}

void validate_weights(std::vector<Violation>& out,
                      const std::vector<double>& w, int n,
                      const std::string& path, bool positive) {
  require(out, static_cast<int>(w.size()) == n, path,
          "expected " + std::to_string(n) + " entries, got " +
              std::to_string(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0 || (positive && w[i] == 0.0)) {
      out.push_back({path + "[" + std::to_string(i) + "]",
                     positive ? "must be finite and positive"
                              : "must be finite and nonnegative"});
    }
  }
}

void validate_basic(std::vector<Violation>& out, const Instance& inst,
                    const BasicUtilitySpec& spec, const std::string& path) {
  const int n = inst.num_items;
  if (const auto* mod = std::get_if<ModularSpec>(&spec)) {
    validate_weights(out, mod->weights, n, path + ".weights", false);
  } else if (const auto* cov = std::get_if<WeightedCoverageSpec>(&spec)) {
    const int ne = static_cast<int>(cov->element_weights.size());
    for (std::size_t i = 0; i < cov->element_weights.size(); ++i) {
      double w = cov->element_weights[i];
      require(out, std::isfinite(w) && w >= 0.0,
              path + ".element_weights[" + std::to_string(i) + "]",
              "must be finite and nonnegative");
    }
    require(out, static_cast<int>(cov->covers.size()) == n, path + ".covers",
            "expected one cover list per item");
    for (std::size_t i = 0; i < cov->covers.size(); ++i) {
      for (int e : cov->covers[i]) {
        require(out, e >= 0 && e < ne,
                path + ".covers[" + std::to_string(i) + "]",
                "element index out of range");
      }
    }
  } else if (const auto* gc = std::get_if<GroupCountSpec>(&spec)) {
    require(out, gc->group >= 0 && gc->group < inst.num_groups(),
            path + ".group", "group index out of range");
  } else if (const auto* rev = std::get_if<MnlRevenueSpec>(&spec)) {
    validate_weights(out, rev->revenue, n, path + ".revenue", false);
    validate_weights(out, rev->weight, n, path + ".weight", true);
    require(out,
            std::isfinite(rev->no_purchase_weight) &&
                rev->no_purchase_weight > 0.0,
            path + ".no_purchase_weight", "must be finite and positive");
  } else if (const auto* share = std::get_if<MnlGroupShareSpec>(&spec)) {
    require(out, share->group >= 0 && share->group < inst.num_groups(),
            path + ".group", "group index out of range");
    validate_weights(out, share->weight, n, path + ".weight", true);
    require(out,
            std::isfinite(share->no_purchase_weight) &&
                share->no_purchase_weight > 0.0,
            path + ".no_purchase_weight", "must be finite and positive");
  }
}

void validate_spec(std::vector<Violation>& out, const Instance& inst,
                   const UtilitySpec& spec, const std::string& path) {
  if (const auto* seq = std::get_if<SequentialMixSpec>(&spec)) {
    require(out, !seq->levels.empty(), path + ".levels",
            "needs at least one level");
    require(out,
            static_cast<int>(seq->levels.size()) <= inst.num_items,
            path + ".levels", "more levels than items");
    require(out, std::holds_alternative<PermutationsFamily>(inst.family), path,
            "sequential utilities require the permutations family");
    for (std::size_t l = 0; l < seq->levels.size(); ++l) {
      const auto& level = seq->levels[l];
      const std::string lp = path + ".levels[" + std::to_string(l) + "]";
      require(out, std::isfinite(level.weight) && level.weight >= 0.0,
              lp + ".weight", "must be finite and nonnegative");
      validate_basic(out, inst, level.component, lp + ".component");
    }
  } else {
    require(out, !std::holds_alternative<PermutationsFamily>(inst.family),
            path, "the permutations family requires sequential utilities");
    BasicUtilitySpec basic = std::visit(
        [](const auto& s) -> BasicUtilitySpec {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>,
                                       SequentialMixSpec>) {
            return ModularSpec{};  // unreachable
          } else {
            return s;
          }
        },
        spec);
    validate_basic(out, inst, basic, path);
  }
}

}  // namespace

double SolutionDistribution::total_mass() const {
  double mass = 0.0;
  for (const auto& [sel, prob] : support) mass += prob;
  return mass;
}

ValidationResult validate_instance(const Instance& inst) {
  ValidationResult result;
  auto& out = result.violations;
  require(out, inst.num_items >= 1, "num_items", "needs at least one item");
  require(out,
          inst.groups.num_groups ==
              static_cast<int>(inst.groups.membership.size()),
          "groups.membership", "expected one member list per group");
  require(out, inst.groups.num_groups >= 1, "groups.num_groups",
          "needs at least one group");
  if (!result.ok()) return result;

  for (int t = 0; t < inst.num_groups(); ++t) {
    const std::string path = "groups.membership[" + std::to_string(t) + "]";
    std::vector<char> seen(std::max(inst.num_items, 1), 0);
    for (int item : inst.groups.membership[t]) {
      if (item < 0 || item >= inst.num_items) {
        out.push_back({path, "item index out of range"});
      } else if (seen[item]) {
        out.push_back({path, "item " + std::to_string(item) + " repeated"});
      } else {
        seen[item] = 1;
      }
    }
  }

  if (const auto* card = std::get_if<CardinalityFamily>(&inst.family)) {
    require(out, card->max_size >= 0 && card->max_size <= inst.num_items,
            "family.max_size", "must lie between 0 and num_items");
  }

  validate_spec(out, inst, inst.global, "global");
  require(out,
          static_cast<int>(inst.group_utils.size()) == inst.num_groups(),
          "group_utils", "expected one utility per group");
  for (std::size_t t = 0; t < inst.group_utils.size(); ++t) {
    validate_spec(out, inst, inst.group_utils[t],
                  "group_utils[" + std::to_string(t) + "]");
  }
  return result;
}

ValidationResult validate_fairness(const Instance& inst,
                                   const FairnessSpec& fairness) {
  ValidationResult result;
  auto& out = result.violations;
  const int m = inst.num_groups();
  auto check_bounds = [&](const std::vector<double>& v,
                          const std::string& path) {
    require(out, static_cast<int>(v.size()) == m, path,
            "expected one entry per group");
    for (std::size_t t = 0; t < v.size(); ++t) {
      require(out, std::isfinite(v[t]) && v[t] >= 0.0,
              path + "[" + std::to_string(t) + "]",
              "must be finite and nonnegative");
    }
  };
  if (const auto* lower = std::get_if<LowerBoundsSpec>(&fairness)) {
    check_bounds(lower->alpha, "alpha");
  } else if (const auto* box = std::get_if<BoxSpec>(&fairness)) {
    check_bounds(box->alpha, "alpha");
    check_bounds(box->beta, "beta");
    if (box->alpha.size() == box->beta.size()) {
      for (std::size_t t = 0; t < box->alpha.size(); ++t) {
        require(out, box->beta[t] >= box->alpha[t],
                "beta[" + std::to_string(t) + "]",
                "upper bound below lower bound");
      }
    }
  } else if (const auto* pair = std::get_if<PairwiseSpec>(&fairness)) {
    require(out, static_cast<int>(pair->gamma.size()) == m, "gamma",
            "expected an m-by-m matrix");
    for (std::size_t t = 0; t < pair->gamma.size(); ++t) {
      const auto& row = pair->gamma[t];
      require(out, static_cast<int>(row.size()) == m,
              "gamma[" + std::to_string(t) + "]",
              "expected an m-by-m matrix");
      for (std::size_t u = 0; u < row.size(); ++u) {
        if (t == u) continue;
        require(out, std::isfinite(row[u]) && row[u] >= 0.0,
                "gamma[" + std::to_string(t) + "][" + std::to_string(u) + "]",
                "must be finite and nonnegative");
      }
    }
  }
  return result;
}

std::uint64_t feasible_family_size(const Instance& inst) {
  const int n = inst.num_items;
  if (const auto* card = std::get_if<CardinalityFamily>(&inst.family)) {
    std::uint64_t total = 0;
    for (int j = 0; j <= std::min(card->max_size, n); ++j) {
      std::uint64_t c = binom(n, j);
      if (c == kU64Max || total > kU64Max - c) return kU64Max;
      total += c;
    }
    return total;
  }
  if (std::holds_alternative<AllSubsetsFamily>(inst.family)) {
    if (n >= 64) return kU64Max;
    return std::uint64_t{1} << n;
  }
  return factorial(n);
}

bool selection_in_family(const Instance& inst, const Selection& sel) {
  for (int item : sel) {
    if (item < 0 || item >= inst.num_items) return false;
  }
  if (std::holds_alternative<PermutationsFamily>(inst.family)) {
    if (static_cast<int>(sel.size()) != inst.num_items) return false;
    std::vector<char> seen(inst.num_items, 0);
    for (int item : sel) {
      if (seen[item]) return false;
      seen[item] = 1;
    }
    return true;
  }
  for (std::size_t i = 1; i < sel.size(); ++i) {
    if (sel[i - 1] >= sel[i]) return false;
  }
  if (const auto* card = std::get_if<CardinalityFamily>(&inst.family)) {
    return static_cast<int>(sel.size()) <= card->max_size;
  }
  return true;
}

double eval_basic_spec(const Instance& inst, const BasicUtilitySpec& spec,
                       const Selection& sel) {
  return eval_basic(inst, spec, sel);
}

double eval_spec(const Instance& inst, const UtilitySpec& spec,
                 const Selection& sel) {
  if (const auto* seq = std::get_if<SequentialMixSpec>(&spec)) {
    double total = 0.0;
    Selection prefix;
    prefix.reserve(seq->levels.size());
    for (std::size_t l = 0; l < seq->levels.size(); ++l) {
      if (l < sel.size()) prefix.push_back(sel[l]);
      total += seq->levels[l].weight *
               eval_basic(inst, seq->levels[l].component, prefix);
    }
    return total;
  }
  return std::visit(
      [&](const auto& s) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>,
                                     SequentialMixSpec>) {
          return 0.0;  // unreachable
        } else {
          return BasicEval{inst, sel}(s);
        }
      },
      spec);
}

double eval_global(const Instance& inst, const Selection& sel) {
  if (!selection_in_family(inst, sel))
    throw std::invalid_argument("selection outside the feasible family");
  return eval_spec(inst, inst.global, sel);
}

double eval_group(const Instance& inst, int group, const Selection& sel) {
  if (group < 0 || group >= inst.num_groups())
    throw std::invalid_argument("group index out of range");
  if (!selection_in_family(inst, sel))
    throw std::invalid_argument("selection outside the feasible family");
  return eval_spec(inst, inst.group_utils[group], sel);
}

std::vector<Selection> enumerate_feasible(const Instance& inst,
                                          std::uint64_t cap) {
  const std::uint64_t size = feasible_family_size(inst);
  if (size > cap) {
    throw FamilyTooLarge("feasible family has " +
                         (size == kU64Max ? std::string("more than 2^64 - 1")
                                          : std::to_string(size)) +
                         " selections, above the cap of " +
                         std::to_string(cap));
  }
  const int n = inst.num_items;
  std::vector<Selection> out;
  out.reserve(static_cast<std::size_t>(size));

  if (std::holds_alternative<PermutationsFamily>(inst.family)) {
    Selection perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }

  int max_size = n;
  if (const auto* card = std::get_if<CardinalityFamily>(&inst.family)) {
    max_size = std::min(card->max_size, n);
  }
  out.push_back({});
  for (int j = 1; j <= max_size; ++j) {
    Selection idx(j);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      out.push_back(idx);
      int p = j - 1;
      while (p >= 0 && idx[p] == n - j + p) --p;
      if (p < 0) break;
      ++idx[p];
      for (int q = p + 1; q < j; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return out;
}

ExpectedUtilities expected_utilities(const Instance& inst,
                                     const SolutionDistribution& dist) {
  ExpectedUtilities out;
  out.groups.assign(inst.num_groups(), 0.0);
  for (const auto& [sel, prob] : dist.support) {
    if (!(std::isfinite(prob) && prob >= 0.0))
      throw std::invalid_argument("distribution probability must be finite "
                                  "and nonnegative");
    check_items(inst, sel);
    out.global += prob * eval_spec(inst, inst.global, sel);
    for (int t = 0; t < inst.num_groups(); ++t) {
      out.groups[t] += prob * eval_spec(inst, inst.group_utils[t], sel);
    }
  }
  return out;
}

bool is_monotone_spec(const UtilitySpec& spec) {
  return std::holds_alternative<ModularSpec>(spec) ||
         std::holds_alternative<WeightedCoverageSpec>(spec) ||
         std::holds_alternative<GroupCountSpec>(spec);
}

bool is_submodular_spec(const UtilitySpec& spec) {
  return std::holds_alternative<ModularSpec>(spec) ||
         std::holds_alternative<WeightedCoverageSpec>(spec) ||
         std::holds_alternative<GroupCountSpec>(spec);
}

}  // namespace fairsel
