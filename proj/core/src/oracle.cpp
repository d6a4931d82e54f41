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

#include "fairsel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>
#include <tuple>

namespace fairsel {
namespace {

void check_coeffs(const Instance& inst, const WeightedQuery& query,
                  bool allow_negative) {
  if (static_cast<int>(query.coeffs.size()) != inst.num_groups())
    throw OracleError("expected one coefficient per group, got " +
                      std::to_string(query.coeffs.size()));
  for (double c : query.coeffs) {
    if (!std::isfinite(c)) throw OracleError("coefficient is not finite");
    if (!allow_negative && c < 0.0)
      throw OracleError("this oracle requires nonnegative coefficients");
  }
}

// Per-selection values of f and every g_t, in enumeration order.
struct ValueTable {
  std::vector<Selection> selections;
  std::vector<double> global;
  std::vector<std::vector<double>> groups;
};

ValueTable build_table(const Instance& inst, std::uint64_t cap) {
  ValueTable table;
  table.selections = enumerate_feasible(inst, cap);
  const int m = inst.num_groups();
  table.global.reserve(table.selections.size());
  table.groups.reserve(table.selections.size());
  for (const Selection& sel : table.selections) {
    table.global.push_back(eval_spec(inst, inst.global, sel));
    std::vector<double> g(m);
    for (int t = 0; t < m; ++t)
      g[t] = eval_spec(inst, inst.group_utils[t], sel);
    table.groups.push_back(std::move(g));
  }
  return table;
}

OracleResult table_query(const ValueTable& table, const WeightedQuery& query) {
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t s = 0; s < table.selections.size(); ++s) {
    double v = table.global[s];
    for (std::size_t t = 0; t < query.coeffs.size(); ++t)
      v += query.coeffs[t] * table.groups[s][t];
    if (s == 0 || v > best_value) {
      best = s;
      best_value = v;
    }
  }
  return {table.selections[best], best_value};
}

Selection insert_sorted(const Selection& sel, int item) {
  Selection out = sel;
  out.insert(std::upper_bound(out.begin(), out.end(), item), item);
  return out;
}

bool all_specs_simple_submodular(const Instance& inst) {
  if (!is_monotone_spec(inst.global) || !is_submodular_spec(inst.global))
    return false;
  for (const auto& spec : inst.group_utils) {
    if (!is_monotone_spec(spec) || !is_submodular_spec(spec)) return false;
  }
  return true;
}

bool basic_is_simple_submodular(const BasicUtilitySpec& spec) {
  return std::holds_alternative<ModularSpec>(spec) ||
         std::holds_alternative<WeightedCoverageSpec>(spec) ||
         std::holds_alternative<GroupCountSpec>(spec);
}

std::uint64_t permutation_count(int n) {
  unsigned __int128 r = 1;
  for (int i = 2; i <= n; ++i) {
    r *= static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

double composite_value(const Instance& inst, const Selection& sel,
                       const WeightedQuery& query) {
  check_coeffs(inst, query, /*allow_negative=*/true);
  double v = eval_spec(inst, inst.global, sel);
  for (std::size_t t = 0; t < query.coeffs.size(); ++t)
    v += query.coeffs[t] * eval_spec(inst, inst.group_utils[t], sel);
  return v;
}

OracleResult fairmax_exact(const Instance& inst, const WeightedQuery& query,
                           std::uint64_t cap) {
  check_coeffs(inst, query, /*allow_negative=*/true);
  return table_query(build_table(inst, cap), query);
}

OracleResult fairmax_greedy(const Instance& inst, const WeightedQuery& query) {
  check_coeffs(inst, query, /*allow_negative=*/false);
  const auto* card = std::get_if<CardinalityFamily>(&inst.family);
  if (card == nullptr)
    throw OracleError("greedy oracle requires a cardinality family");
  if (!all_specs_simple_submodular(inst))
    throw OracleError(
        "greedy oracle requires monotone submodular utilities "
        "(modular, coverage, or group-count)");

  const int k = std::min(card->max_size, inst.num_items);
  Selection cur;
  double cur_value = composite_value(inst, cur, query);

  // Lazy evaluation: heap entries carry the solution size their gain was
  // computed at; stale entries are refreshed on pop. Ties favor lower items.
  using Entry = std::tuple<double, int, int>;  // (gain, -item, eval_size)
  std::priority_queue<Entry> heap;
  for (int i = 0; i < inst.num_items; ++i) {
    double gain = composite_value(inst, {i}, query) - cur_value;
    heap.emplace(gain, -i, 0);
  }

  while (static_cast<int>(cur.size()) < k && !heap.empty()) {
    auto [gain, neg_item, eval_size] = heap.top();
    heap.pop();
    const int item = -neg_item;
    if (eval_size != static_cast<int>(cur.size())) {
      double fresh = composite_value(inst, insert_sorted(cur, item), query) -
                     cur_value;
      heap.emplace(fresh, neg_item, static_cast<int>(cur.size()));
      continue;
    }
    if (gain <= 0.0) break;
    cur = insert_sorted(cur, item);
    cur_value = composite_value(inst, cur, query);
  }
  return {cur, composite_value(inst, cur, query)};
}

OracleResult fairmax_mnl(const Instance& inst, const WeightedQuery& query) {
  check_coeffs(inst, query, /*allow_negative=*/false);
  if (!std::holds_alternative<AllSubsetsFamily>(inst.family))
    throw OracleError("assortment oracle requires the all-subsets family");
  const auto* rev = std::get_if<MnlRevenueSpec>(&inst.global);
  if (rev == nullptr)
    throw OracleError("assortment oracle requires a choice-model revenue "
                      "objective");
  for (const auto& spec : inst.group_utils) {
    const auto* share = std::get_if<MnlGroupShareSpec>(&spec);
    if (share == nullptr)
      throw OracleError("assortment oracle requires choice-model group "
                        "shares");
    if (share->weight != rev->weight ||
        share->no_purchase_weight != rev->no_purchase_weight)
      throw OracleError("assortment oracle requires identical preference "
                        "weights across all utilities");
  }

  // Fold the group coefficients into per-item adjusted revenues; the optimum
  // is then a prefix of the items sorted by adjusted revenue.
  const int n = inst.num_items;
  std::vector<double> adjusted(rev->revenue);
  for (std::size_t t = 0; t < query.coeffs.size(); ++t) {
    const auto& share = std::get<MnlGroupShareSpec>(inst.group_utils[t]);
    for (int item : inst.groups.membership[share.group])
      adjusted[item] += query.coeffs[t];
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return adjusted[a] > adjusted[b];
  });

  Selection best;
  double best_value = composite_value(inst, best, query);
  Selection prefix;
  for (int j = 0; j < n; ++j) {
    prefix.push_back(order[j]);
    Selection sorted = prefix;
    std::sort(sorted.begin(), sorted.end());
    double v = composite_value(inst, sorted, query);
    if (v > best_value) {
      best = std::move(sorted);
      best_value = v;
    }
  }
  return {best, composite_value(inst, best, query)};
}

OracleResult fairmax_sequential(const Instance& inst,
                                const WeightedQuery& query,
                                std::uint64_t exact_cap) {
  if (!std::holds_alternative<PermutationsFamily>(inst.family))
    throw OracleError("ordering oracle requires the permutations family");
  const auto* global = std::get_if<SequentialMixSpec>(&inst.global);
  if (global == nullptr)
    throw OracleError("ordering oracle requires position-discounted "
                      "utilities");
  std::vector<const SequentialMixSpec*> group_specs;
  for (const auto& spec : inst.group_utils) {
    const auto* seq = std::get_if<SequentialMixSpec>(&spec);
    if (seq == nullptr)
      throw OracleError("ordering oracle requires position-discounted "
                        "utilities");
    group_specs.push_back(seq);
  }

  // Exhaustive search tolerates signed coefficients; the greedy fallback
  // needs the composite to stay monotone submodular.
  const int n = inst.num_items;
  const bool exact = permutation_count(n) <= exact_cap;
  check_coeffs(inst, query, /*allow_negative=*/exact);
  if (exact) return table_query(build_table(inst, exact_cap), query);

  for (const auto& level : global->levels) {
    if (!basic_is_simple_submodular(level.component))
      throw OracleError("ordering greedy requires monotone submodular "
                        "level components");
  }
  for (const auto* seq : group_specs) {
    for (const auto& level : seq->levels) {
      if (!basic_is_simple_submodular(level.component))
        throw OracleError("ordering greedy requires monotone submodular "
                          "level components");
    }
  }

  // Greedy over (item, level) pairs: a pair set is independent when no item
  // repeats and at most l pairs carry a level <= l. The collected pairs read
  // off a permutation by level; unused items follow in index order.
  int num_levels = static_cast<int>(global->levels.size());
  for (const auto* seq : group_specs)
    num_levels = std::max(num_levels, static_cast<int>(seq->levels.size()));

  // Value of one level's combined component on a set.
  auto level_value = [&](int level, const Selection& sel) {
    double v = 0.0;
    if (level < static_cast<int>(global->levels.size()))
      v += global->levels[level].weight *
           eval_basic_spec(inst, global->levels[level].component, sel);
    for (std::size_t t = 0; t < group_specs.size(); ++t) {
      const auto& levels = group_specs[t]->levels;
      if (level < static_cast<int>(levels.size()))
        v += query.coeffs[t] * levels[level].weight *
             eval_basic_spec(inst, levels[level].component, sel);
    }
    return v;
  };
  // Objective of a pair set: each level sees the items assigned at or below.
  auto pair_value = [&](const std::vector<std::pair<int, int>>& pairs) {
    double total = 0.0;
    Selection at_or_below;
    for (int level = 0; level < num_levels; ++level) {
      for (const auto& [item, l] : pairs) {
        if (l == level)
          at_or_below.insert(
              std::upper_bound(at_or_below.begin(), at_or_below.end(), item),
              item);
      }
      total += level_value(level, at_or_below);
    }
    return total;
  };

  std::vector<std::pair<int, int>> chosen;  // (item, level), level 0-based
  std::vector<char> item_used(n, 0);
  std::vector<int> level_counts(num_levels, 0);  // pairs with level <= l
  double chosen_value = 0.0;
  while (true) {
    double best_gain = 0.0;
    int best_item = -1, best_level = -1;
    for (int item = 0; item < n; ++item) {
      if (item_used[item]) continue;
      for (int level = 0; level < num_levels; ++level) {
        bool fits = true;
        for (int l = level; l < num_levels; ++l) {
          if (level_counts[l] + 1 > l + 1) {
            fits = false;
            break;
          }
        }
        if (!fits) continue;
        auto candidate = chosen;
        candidate.emplace_back(item, level);
        double gain = pair_value(candidate) - chosen_value;
        if (gain > best_gain) {
          best_gain = gain;
          best_item = item;
          best_level = level;
        }
      }
    }
    if (best_item < 0) break;
    chosen.emplace_back(best_item, best_level);
    item_used[best_item] = 1;
    for (int l = best_level; l < num_levels; ++l) ++level_counts[l];
    chosen_value = pair_value(chosen);
  }

  std::stable_sort(chosen.begin(), chosen.end(),
                   [](const auto& a, const auto& b) {
                     return a.second < b.second ||
                            (a.second == b.second && a.first < b.first);
                   });
  Selection perm;
  perm.reserve(n);
  for (const auto& [item, level] : chosen) perm.push_back(item);
  for (int item = 0; item < n; ++item) {
    if (!item_used[item]) perm.push_back(item);
  }
  return {perm, composite_value(inst, perm, query)};
}

const char* oracle_kind_name(OracleKind kind) {
  switch (kind) {
    case OracleKind::kExact: return "exact";
    case OracleKind::kGreedy: return "greedy";
    case OracleKind::kMnl: return "mnl";
    case OracleKind::kSequential: return "sequential";
  }
  return "unknown";
}

OracleKind parse_oracle_kind(const std::string& name) {
  if (name == "exact") return OracleKind::kExact;
  if (name == "greedy") return OracleKind::kGreedy;
  if (name == "mnl") return OracleKind::kMnl;
  if (name == "sequential") return OracleKind::kSequential;
  throw OracleError("unknown oracle kind: " + name);
}

namespace {

class ExactOracle : public FairMaxOracle {
 public:
  ExactOracle(const Instance& inst, std::uint64_t cap) : inst_(inst) {
    try {
      table_ = build_table(inst_, cap);
    } catch (const FamilyTooLarge& e) {
      throw OracleError(std::string("exact oracle: ") + e.what());
    }
  }
  OracleResult query(const WeightedQuery& q) const override {
    check_coeffs(inst_, q, /*allow_negative=*/true);
    return table_query(table_, q);
  }
  OracleGuarantee guarantee() const override { return {1.0, 1.0, true}; }
  OracleKind kind() const override { return OracleKind::kExact; }

 private:
  Instance inst_;
  ValueTable table_;
};

class GreedyOracle : public FairMaxOracle {
 public:
  explicit GreedyOracle(const Instance& inst) : inst_(inst) {
    if (!std::holds_alternative<CardinalityFamily>(inst_.family))
      throw OracleError("greedy oracle requires a cardinality family");
    if (!all_specs_simple_submodular(inst_))
      throw OracleError(
          "greedy oracle requires monotone submodular utilities "
          "(modular, coverage, or group-count)");
  }
  OracleResult query(const WeightedQuery& q) const override {
    return fairmax_greedy(inst_, q);
  }
  OracleGuarantee guarantee() const override {
    const double ratio = 1.0 - 1.0 / std::numbers::e;
    return {ratio, ratio, false};
  }
  OracleKind kind() const override { return OracleKind::kGreedy; }

 private:
  Instance inst_;
};

class MnlOracle : public FairMaxOracle {
 public:
  explicit MnlOracle(const Instance& inst) : inst_(inst) {
    fairmax_mnl(inst_, WeightedQuery{std::vector<double>(
                           inst_.num_groups(), 0.0)});  // applicability probe
  }
  OracleResult query(const WeightedQuery& q) const override {
    return fairmax_mnl(inst_, q);
  }
  OracleGuarantee guarantee() const override { return {1.0, 1.0, false}; }
  OracleKind kind() const override { return OracleKind::kMnl; }

 private:
  Instance inst_;
};

class SequentialOracle : public FairMaxOracle {
 public:
  SequentialOracle(const Instance& inst, std::uint64_t exact_cap)
      : inst_(inst), exact_cap_(exact_cap) {
    exact_ = permutation_count(inst_.num_items) <= exact_cap_;
    fairmax_sequential(inst_,
                       WeightedQuery{std::vector<double>(inst_.num_groups(),
                                                         0.0)},
                       exact_cap_);  // applicability probe
  }
  OracleResult query(const WeightedQuery& q) const override {
    return fairmax_sequential(inst_, q, exact_cap_);
  }
  OracleGuarantee guarantee() const override {
    if (exact_) return {1.0, 1.0, true};
    return {0.5, 0.5, false};
  }
  OracleKind kind() const override { return OracleKind::kSequential; }

 private:
  Instance inst_;
  std::uint64_t exact_cap_;
  bool exact_ = false;
};

}  // namespace

std::unique_ptr<FairMaxOracle> make_oracle(OracleKind kind,
                                           const Instance& inst,
                                           const OracleConfig& config) {
  switch (kind) {
    case OracleKind::kExact:
      return std::make_unique<ExactOracle>(inst, config.enumeration_cap);
    case OracleKind::kGreedy:
      return std::make_unique<GreedyOracle>(inst);
    case OracleKind::kMnl:
      return std::make_unique<MnlOracle>(inst);
    case OracleKind::kSequential:
      return std::make_unique<SequentialOracle>(inst,
                                                config.sequential_exact_cap);
  }
  throw OracleError("unknown oracle kind");
}

}  // namespace fairsel
