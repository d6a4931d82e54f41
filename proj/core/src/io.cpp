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

#include "fairsel/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fairsel {
namespace {

using nlohmann::json;

BasicUtilitySpec parse_basic_spec(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "modular") {
    ModularSpec spec;
    spec.weights = j.at("weights").get<std::vector<double>>();
    return spec;
  }
  if (type == "coverage") {
    WeightedCoverageSpec spec;
    spec.element_weights = j.at("element_weights").get<std::vector<double>>();
    spec.covers = j.at("covers").get<std::vector<std::vector<int>>>();
    return spec;
  }
  if (type == "group_count") {
    return GroupCountSpec{j.at("group").get<int>()};
  }
  if (type == "mnl_revenue") {
    MnlRevenueSpec spec;
    spec.revenue = j.at("revenue").get<std::vector<double>>();
    spec.weight = j.at("weight").get<std::vector<double>>();
    spec.no_purchase_weight = j.at("no_purchase_weight").get<double>();
    return spec;
  }
  if (type == "mnl_share") {
    MnlGroupShareSpec spec;
    spec.group = j.at("group").get<int>();
    spec.weight = j.at("weight").get<std::vector<double>>();
    spec.no_purchase_weight = j.at("no_purchase_weight").get<double>();
    return spec;
  }
  throw FormatError("unknown utility type: " + type);
}

UtilitySpec parse_utility_spec(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "sequential") {
    SequentialMixSpec spec;
    for (const json& jl : j.at("levels")) {
      SequentialLevel level;
      level.weight = jl.at("weight").get<double>();
      level.component = parse_basic_spec(jl.at("component"));
      spec.levels.push_back(std::move(level));
    }
    return spec;
  }
  return std::visit([](auto&& s) -> UtilitySpec { return s; },
                    parse_basic_spec(j));
}

json basic_spec_to_json(const BasicUtilitySpec& spec) {
  json j;
  if (const auto* mod = std::get_if<ModularSpec>(&spec)) {
    j["type"] = "modular";
    j["weights"] = mod->weights;
  } else if (const auto* cov = std::get_if<WeightedCoverageSpec>(&spec)) {
    j["type"] = "coverage";
    j["element_weights"] = cov->element_weights;
    j["covers"] = cov->covers;
  } else if (const auto* gc = std::get_if<GroupCountSpec>(&spec)) {
    j["type"] = "group_count";
    j["group"] = gc->group;
  } else if (const auto* rev = std::get_if<MnlRevenueSpec>(&spec)) {
    j["type"] = "mnl_revenue";
    j["revenue"] = rev->revenue;
    j["weight"] = rev->weight;
    j["no_purchase_weight"] = rev->no_purchase_weight;
  } else if (const auto* share = std::get_if<MnlGroupShareSpec>(&spec)) {
    j["type"] = "mnl_share";
    j["group"] = share->group;
    j["weight"] = share->weight;
    j["no_purchase_weight"] = share->no_purchase_weight;
  }
  return j;
}

json utility_spec_to_json(const UtilitySpec& spec) {
  if (const auto* seq = std::get_if<SequentialMixSpec>(&spec)) {
    json j;
    j["type"] = "sequential";
    j["levels"] = json::array();
    for (const auto& level : seq->levels) {
      json jl;
      jl["weight"] = level.weight;
      jl["component"] = basic_spec_to_json(level.component);
      j["levels"].push_back(std::move(jl));
    }
    return j;
  }
  return std::visit(
      [](const auto& s) -> json {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>,
                                     SequentialMixSpec>) {
          return json();  // unreachable
        } else {
          return basic_spec_to_json(s);
        }
      },
      spec);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

}  // namespace

ProblemFile parse_instance_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ProblemFile problem;
    Instance& inst = problem.instance;
    inst.num_items = j.at("n").get<int>();
    inst.groups.membership =
        j.at("groups").get<std::vector<std::vector<int>>>();
    inst.groups.num_groups = static_cast<int>(inst.groups.membership.size());
    inst.global = parse_utility_spec(j.at("global"));
    for (const json& ju : j.at("group_utils"))
      inst.group_utils.push_back(parse_utility_spec(ju));

    const json& jf = j.at("family");
    const std::string family = jf.at("type").get<std::string>();
    if (family == "cardinality") {
      inst.family = CardinalityFamily{jf.at("k").get<int>()};
    } else if (family == "all_subsets") {
      inst.family = AllSubsetsFamily{};
    } else if (family == "permutations") {
      inst.family = PermutationsFamily{};
    } else {
      throw FormatError("unknown family type: " + family);
    }

    const json& jr = j.at("fairness");
    const std::string fairness = jr.at("type").get<std::string>();
    if (fairness == "lower") {
      problem.fairness =
          LowerBoundsSpec{jr.at("alpha").get<std::vector<double>>()};
    } else if (fairness == "box") {
      BoxSpec box;
      box.alpha = jr.at("alpha").get<std::vector<double>>();
      box.beta = jr.at("beta").get<std::vector<double>>();
      problem.fairness = std::move(box);
    } else if (fairness == "pairwise") {
      problem.fairness = PairwiseSpec{
          jr.at("gamma").get<std::vector<std::vector<double>>>()};
    } else {
      throw FormatError("unknown fairness type: " + fairness);
    }
    return problem;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed instance document: ") +
                      e.what());
  }
}

ProblemFile load_instance_file(const std::string& path) {
  return parse_instance_json(read_file(path));
}

std::string instance_to_json(const ProblemFile& problem) {
  const Instance& inst = problem.instance;
  json j;
  j["n"] = inst.num_items;
  j["groups"] = inst.groups.membership;
  j["global"] = utility_spec_to_json(inst.global);
  j["group_utils"] = json::array();
  for (const auto& spec : inst.group_utils)
    j["group_utils"].push_back(utility_spec_to_json(spec));

  if (const auto* card = std::get_if<CardinalityFamily>(&inst.family)) {
    j["family"] = {{"type", "cardinality"}, {"k", card->max_size}};
  } else if (std::holds_alternative<AllSubsetsFamily>(inst.family)) {
    j["family"] = {{"type", "all_subsets"}};
  } else {
    j["family"] = {{"type", "permutations"}};
  }

  if (const auto* lower = std::get_if<LowerBoundsSpec>(&problem.fairness)) {
    j["fairness"] = {{"type", "lower"}, {"alpha", lower->alpha}};
  } else if (const auto* box = std::get_if<BoxSpec>(&problem.fairness)) {
    j["fairness"] = {{"type", "box"},
                     {"alpha", box->alpha},
                     {"beta", box->beta}};
  } else if (const auto* pair = std::get_if<PairwiseSpec>(&problem.fairness)) {
    j["fairness"] = {{"type", "pairwise"}, {"gamma", pair->gamma}};
  }
  return j.dump(2) + "\n";
}

void save_instance_file(const ProblemFile& problem, const std::string& path) {
  write_file(path, instance_to_json(problem));
}

ReportData report_from_solve(const Instance& inst, const SolveReport& report) {
  ReportData data;
  data.status = "optimal";
  data.value = report.expected_global;
  data.upper_bound = report.upper_bound;
  data.rho = report.guarantee.rho;
  data.mu = report.guarantee.mu;
  data.epsilon = report.epsilon;
  data.ordered = std::holds_alternative<PermutationsFamily>(inst.family);
  data.distribution = report.distribution;
  data.expected_groups = report.expected_groups;
  data.f_prime_size = static_cast<int>(report.f_prime.size());
  return data;
}

std::string report_to_json(const ReportData& data) {
  json j;
  j["status"] = data.status;
  j["value"] = data.value;
  j["upper_bound"] = data.upper_bound;
  j["rho"] = data.rho;
  j["mu"] = data.mu;
  j["epsilon"] = data.epsilon;
  j["distribution"] = json::array();
  for (const auto& [sel, prob] : data.distribution.support) {
    json entry;
    entry[data.ordered ? "perm" : "set"] = sel;
    entry["prob"] = prob;
    j["distribution"].push_back(std::move(entry));
  }
  j["expected_groups"] = data.expected_groups;
  j["f_prime_size"] = data.f_prime_size;
  return j.dump(2) + "\n";
}

ReportData parse_report_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ReportData data;
    data.status = j.at("status").get<std::string>();
    data.value = j.at("value").get<double>();
    data.upper_bound = j.at("upper_bound").get<double>();
    data.rho = j.at("rho").get<double>();
    data.mu = j.at("mu").get<double>();
    data.epsilon = j.at("epsilon").get<double>();
    data.f_prime_size = j.at("f_prime_size").get<int>();
    data.expected_groups =
        j.at("expected_groups").get<std::vector<double>>();
    for (const json& entry : j.at("distribution")) {
      Selection sel;
      if (entry.contains("perm")) {
        sel = entry.at("perm").get<Selection>();
        data.ordered = true;
      } else {
        sel = entry.at("set").get<Selection>();
      }
      data.distribution.support.emplace_back(std::move(sel),
                                             entry.at("prob").get<double>());
    }
    return data;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed report document: ") + e.what());
  }
}

ReportData load_report_file(const std::string& path) {
  return parse_report_json(read_file(path));
}

void save_report_file(const ReportData& data, const std::string& path) {
  write_file(path, report_to_json(data));
}

}  // namespace fairsel
