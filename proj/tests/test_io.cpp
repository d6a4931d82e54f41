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

#include <cstdio>
#include <filesystem>
#include <string>
#include <variant>

#include "fairsel/io.hpp"
#include "fairsel/oracle.hpp"
#include "fairsel/solver.hpp"

using namespace fairsel;

namespace {

const char* kLowerDoc = R"({
  "n": 3,
  "groups": [[0], [1, 2]],
  "global": {"type": "modular", "weights": [3.0, 2.0, 1.0]},
  "group_utils": [
    {"type": "group_count", "group": 0},
    {"type": "group_count", "group": 1}
  ],
  "family": {"type": "cardinality", "k": 2},
  "fairness": {"type": "lower", "alpha": [0.5, 1.5]}
})";

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

bool parse_fails_mentioning(const std::string& doc, const std::string& what) {
  try {
    parse_instance_json(doc);
  } catch (const FormatError& e) {
    return std::string(e.what()).find(what) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("instance documents parse into typed specs") {
  ProblemFile problem = parse_instance_json(kLowerDoc);
  const Instance& inst = problem.instance;
  CHECK(inst.num_items == 3);
  CHECK(inst.groups.num_groups == 2);
  CHECK(inst.groups.membership[1] == std::vector<int>{1, 2});

  const auto* mod = std::get_if<ModularSpec>(&inst.global);
  REQUIRE(mod != nullptr);
  CHECK(mod->weights == std::vector<double>{3.0, 2.0, 1.0});
  REQUIRE(inst.group_utils.size() == 2);
  CHECK(std::get<GroupCountSpec>(inst.group_utils[1]).group == 1);

  const auto* card = std::get_if<CardinalityFamily>(&inst.family);
  REQUIRE(card != nullptr);
  CHECK(card->max_size == 2);

  const auto* lower = std::get_if<LowerBoundsSpec>(&problem.fairness);
  REQUIRE(lower != nullptr);
  CHECK(lower->alpha == std::vector<double>{0.5, 1.5});
}

TEST_CASE("every utility and fairness flavor survives a round trip") {
  ProblemFile problem;
  Instance& inst = problem.instance;
  inst.num_items = 4;
  inst.groups.num_groups = 2;
  inst.groups.membership = {{0, 1}, {2, 3}};
  WeightedCoverageSpec cover;
  cover.element_weights = {1.0, 2.0};
  cover.covers = {{0}, {1}, {0, 1}, {}};
  inst.global = cover;
  MnlGroupShareSpec share;
  share.group = 0;
  share.weight = {1.0, 1.0, 2.0, 0.5};
  share.no_purchase_weight = 1.0;
  MnlRevenueSpec revenue;
  revenue.revenue = {4.0, 1.0, 2.0, 3.0};
  revenue.weight = share.weight;
  revenue.no_purchase_weight = 1.0;
  inst.group_utils = {UtilitySpec{share}, UtilitySpec{revenue}};
  inst.family = AllSubsetsFamily{};
  BoxSpec box;
  box.alpha = {0.1, 0.2};
  box.beta = {0.8, 0.9};
  problem.fairness = box;

  const std::string once = instance_to_json(problem);
  const std::string twice = instance_to_json(parse_instance_json(once));
  CHECK(once == twice);

  ProblemFile back = parse_instance_json(once);
  const auto* cov2 = std::get_if<WeightedCoverageSpec>(&back.instance.global);
  REQUIRE(cov2 != nullptr);
  CHECK(cov2->covers == cover.covers);
  CHECK(std::get<MnlRevenueSpec>(back.instance.group_utils[1]).revenue ==
        revenue.revenue);
  CHECK(std::get<BoxSpec>(back.fairness).beta == box.beta);
}

TEST_CASE("ordered instances round trip with layered utilities") {
  ProblemFile problem;
  Instance& inst = problem.instance;
  inst.num_items = 3;
  inst.groups.num_groups = 2;
  inst.groups.membership = {{0}, {1, 2}};
  SequentialMixSpec seq;
  seq.levels = {{1.0, ModularSpec{{3.0, 2.0, 1.0}}},
                {0.5, GroupCountSpec{1}}};
  inst.global = seq;
  SequentialMixSpec g0;
  g0.levels = {{1.0, GroupCountSpec{0}}};
  SequentialMixSpec g1;
  g1.levels = {{1.0, GroupCountSpec{1}}};
  inst.group_utils = {UtilitySpec{g0}, UtilitySpec{g1}};
  inst.family = PermutationsFamily{};
  problem.fairness = PairwiseSpec{{{0.0, 0.3}, {0.4, 0.0}}};

  const std::string once = instance_to_json(problem);
  ProblemFile back = parse_instance_json(once);
  CHECK(instance_to_json(back) == once);

  const auto* seq2 = std::get_if<SequentialMixSpec>(&back.instance.global);
  REQUIRE(seq2 != nullptr);
  REQUIRE(seq2->levels.size() == 2);
  CHECK(seq2->levels[1].weight == 0.5);
  CHECK(std::get<GroupCountSpec>(seq2->levels[1].component).group == 1);
  CHECK(std::holds_alternative<PermutationsFamily>(back.instance.family));
  CHECK(std::get<PairwiseSpec>(back.fairness).gamma[1][0] == 0.4);
}

TEST_CASE("malformed documents raise format errors") {
  CHECK_THROWS_AS(parse_instance_json("not json at all"), FormatError);
  CHECK_THROWS_AS(parse_instance_json("{}"), FormatError);

  std::string doc = kLowerDoc;
  SUBCASE("missing required field") {
    doc.replace(doc.find("\"n\""), 3, "\"m\"");
    CHECK_THROWS_AS(parse_instance_json(doc), FormatError);
  }
  SUBCASE("wrong field type") {
    doc.replace(doc.find("\"n\": 3"), 6, "\"n\": \"three\"");
    CHECK_THROWS_AS(parse_instance_json(doc), FormatError);
  }
  SUBCASE("unknown utility tag") {
    doc.replace(doc.find("modular"), 7, "mystery");
    CHECK(parse_fails_mentioning(doc, "mystery"));
  }
  SUBCASE("unknown family tag") {
    doc.replace(doc.find("cardinality"), 11, "lattice");
    CHECK(parse_fails_mentioning(doc, "lattice"));
  }
  SUBCASE("unknown fairness tag") {
    doc.replace(doc.find("\"lower\""), 7, "\"upper\"");
    CHECK(parse_fails_mentioning(doc, "upper"));
  }
}

TEST_CASE("instance files load back what was saved") {
  ProblemFile problem = parse_instance_json(kLowerDoc);
  const std::string path = temp_path("fairsel_io_instance.json");
  save_instance_file(problem, path);
  ProblemFile loaded = load_instance_file(path);
  CHECK(instance_to_json(loaded) == instance_to_json(problem));
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_instance_file(temp_path("fairsel_io_missing.json")),
                  FormatError);
}

TEST_CASE("solve reports map onto the report schema") {
  ProblemFile problem = parse_instance_json(kLowerDoc);
  SolveConfig config;
  config.epsilon = 1e-3;
  config.radius_floor_rel = 1e-9;
  SolveReport report =
      solve(problem.instance, problem.fairness, OracleKind::kExact, config);

  ReportData data = report_from_solve(problem.instance, report);
  CHECK(data.status == "optimal");
  CHECK(data.value == report.expected_global);
  CHECK(data.upper_bound == report.upper_bound);
  CHECK(data.rho == 1.0);
  CHECK(data.mu == 1.0);
  CHECK(data.epsilon == config.epsilon);
  CHECK_FALSE(data.ordered);
  CHECK(data.expected_groups == report.expected_groups);
  CHECK(data.f_prime_size == static_cast<int>(report.f_prime.size()));
  CHECK(data.distribution.support.size() ==
        report.distribution.support.size());

  const std::string once = report_to_json(data);
  CHECK(once.find("\"set\"") != std::string::npos);
  CHECK(once.find("\"perm\"") == std::string::npos);
  ReportData back = parse_report_json(once);
  CHECK(report_to_json(back) == once);
  CHECK_FALSE(back.ordered);
  CHECK(back.value == data.value);

  const std::string path = temp_path("fairsel_io_report.json");
  save_report_file(data, path);
  CHECK(report_to_json(load_report_file(path)) == once);
  std::remove(path.c_str());
}

TEST_CASE("ordered reports name their support entries perm") {
  ReportData data;
  data.status = "optimal";
  data.value = 3.0;
  data.upper_bound = 3.5;
  data.rho = 1.0;
  data.mu = 1.0;
  data.epsilon = 1e-4;
  data.ordered = true;
  data.distribution.support = {{{2, 0, 1}, 0.75}};
  data.expected_groups = {1.0, 0.5};
  data.f_prime_size = 4;

  const std::string text = report_to_json(data);
  CHECK(text.find("\"perm\"") != std::string::npos);
  CHECK(text.find("\"set\"") == std::string::npos);

  ReportData back = parse_report_json(text);
  CHECK(back.ordered);
  CHECK(back.distribution.support[0].first == Selection{2, 0, 1});
  CHECK(back.distribution.support[0].second == 0.75);

  CHECK_THROWS_AS(parse_report_json("{\"status\": \"optimal\"}"),
                  FormatError);
}
