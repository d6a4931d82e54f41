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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fairsel/io.hpp"

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

struct RunResult {
  int code = -1;
  std::string out;
};

std::filesystem::path work_dir() {
  static const std::filesystem::path dir = [] {
    std::filesystem::path p =
        std::filesystem::temp_directory_path() / "fairsel_cli_test";
    std::filesystem::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

RunResult run_cli(const std::string& args) {
  const std::filesystem::path out_file = work_dir() / "stdout.txt";
  const std::string cmd = std::string(FAIRSEL_CLI_PATH) + " " + args + " > " +
                          out_file.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  RunResult result;
  REQUIRE(status != -1);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_file);
  return result;
}

std::string lower_instance_path() {
  const std::filesystem::path path = work_dir() / "lower.json";
  spit(path, kLowerDoc);
  return path.string();
}

}  // namespace

TEST_CASE("solve writes a report that verify accepts") {
  const std::string instance = lower_instance_path();
  const std::string report = (work_dir() / "report.json").string();

  RunResult solved = run_cli("solve --instance " + instance + " --out " +
                             report + " --eps 1e-4");
  CHECK(solved.code == 0);
  REQUIRE(std::filesystem::exists(report));

  ReportData data = load_report_file(report);
  CHECK(data.status == "optimal");
  CHECK(data.value == doctest::Approx(4.0).epsilon(1e-2));
  CHECK(data.rho == 1.0);
  CHECK_FALSE(data.ordered);

  RunResult verified = run_cli("verify --instance " + instance +
                               " --report " + report + " --tol 1e-2");
  CHECK(verified.code == 0);
  CHECK(verified.out.find("\"pass\": true") != std::string::npos);
  CHECK(verified.out.find("\"opt\"") != std::string::npos);
}

TEST_CASE("repeated solves produce byte-identical reports") {
  const std::string instance = lower_instance_path();
  const std::filesystem::path first = work_dir() / "report_a.json";
  const std::filesystem::path second = work_dir() / "report_b.json";

  CHECK(run_cli("solve --instance " + instance + " --out " + first.string() +
                " --eps 1e-4")
            .code == 0);
  CHECK(run_cli("solve --instance " + instance + " --out " + second.string() +
                " --eps 1e-4")
            .code == 0);
  const std::string a = slurp(first);
  CHECK_FALSE(a.empty());
  CHECK(a == slurp(second));
}

TEST_CASE("a doctored report is rejected") {
  const std::string instance = lower_instance_path();
  const std::string report = (work_dir() / "doctored.json").string();
  REQUIRE(run_cli("solve --instance " + instance + " --out " + report +
                  " --eps 1e-4")
              .code == 0);

  ReportData data = load_report_file(report);
  data.value += 1.0;
  save_report_file(data, report);

  RunResult verified = run_cli("verify --instance " + instance +
                               " --report " + report + " --tol 1e-2");
  CHECK(verified.code == 1);
  CHECK(verified.out.find("\"pass\": false") != std::string::npos);
  CHECK(verified.out.find("claimed_value_consistent") != std::string::npos);
}

TEST_CASE("unsatisfiable requirements exit with the dedicated code") {
  std::string doc = kLowerDoc;
  doc.replace(doc.find("[0.5, 1.5]"), 10, "[1.0, 2.0]");
  const std::filesystem::path path = work_dir() / "unsat.json";
  spit(path, doc);

  RunResult solved = run_cli("solve --instance " + path.string() + " --out " +
                             (work_dir() / "unsat_report.json").string());
  CHECK(solved.code == 2);
}

TEST_CASE("invalid inputs exit with the invalid-input code") {
  const std::string report = (work_dir() / "never.json").string();

  SUBCASE("broken instance document") {
    const std::filesystem::path path = work_dir() / "broken.json";
    spit(path, "{\"n\": 3}");
    CHECK(run_cli("solve --instance " + path.string() + " --out " + report)
              .code == 3);
  }
  SUBCASE("instance that fails validation") {
    std::string doc = kLowerDoc;
    doc.replace(doc.find("[1, 2]"), 6, "[1, 9]");
    const std::filesystem::path path = work_dir() / "invalid.json";
    spit(path, doc);
    CHECK(run_cli("solve --instance " + path.string() + " --out " + report)
              .code == 3);
  }
  SUBCASE("missing instance file") {
    CHECK(run_cli("solve --instance " +
                  (work_dir() / "no_such.json").string() + " --out " + report)
              .code == 3);
  }
  SUBCASE("unknown oracle name") {
    CHECK(run_cli("solve --instance " + lower_instance_path() +
                  " --oracle quantum --out " + report)
              .code == 3);
  }
  SUBCASE("choice-model oracle on a mismatched instance") {
    CHECK(run_cli("solve --instance " + lower_instance_path() +
                  " --oracle mnl --out " + report)
              .code == 3);
  }
}

TEST_CASE("oracle self-test reports its ratio") {
  RunResult tested = run_cli("oracle-test --instance " +
                             lower_instance_path() +
                             " --oracle exact --trials 25");
  CHECK(tested.code == 0);
  CHECK(tested.out.find("\"pass\": true") != std::string::npos);
  CHECK(tested.out.find("\"min_ratio\": 1.0") != std::string::npos);
}

TEST_CASE("oversized enumeration exits with the cap code") {
  ProblemFile big;
  big.instance.num_items = 25;
  big.instance.groups.num_groups = 1;
  big.instance.groups.membership = {{0, 1, 2}};
  big.instance.global = ModularSpec{std::vector<double>(25, 1.0)};
  big.instance.group_utils = {UtilitySpec{GroupCountSpec{0}}};
  big.instance.family = AllSubsetsFamily{};
  big.fairness = LowerBoundsSpec{{0.5}};
  const std::filesystem::path path = work_dir() / "big.json";
  save_instance_file(big, path.string());

  ReportData stub;
  stub.status = "optimal";
  stub.value = 1.0;
  stub.upper_bound = 1.0;
  stub.rho = 1.0;
  stub.mu = 1.0;
  stub.epsilon = 1e-4;
  stub.distribution.support = {{{0}, 1.0}};
  stub.expected_groups = {1.0};
  stub.f_prime_size = 1;
  const std::filesystem::path stub_path = work_dir() / "stub_report.json";
  save_report_file(stub, stub_path.string());

  CHECK(run_cli("verify --instance " + path.string() + " --report " +
                stub_path.string())
            .code == 5);
  CHECK(run_cli("oracle-test --instance " + lower_instance_path() +
                " --cap 3 --trials 1")
            .code == 5);
}
