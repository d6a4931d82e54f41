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

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fairsel/io.hpp"
#include "fairsel/verify.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

// Exit codes: 0 success, 2 unsatisfiable fairness, 3 invalid input or
// inapplicable oracle, 4 numerical breakdown, 5 enumeration cap exceeded.
constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitTooLarge = 5;

struct SolveArgs {
  std::string instance_path;
  std::string oracle = "exact";
  std::string out_path;
  double eps = 1e-6;
  bool collect_all = false;
  double radius = 0.0;
  long max_iter = -1;
};

int run_solve(const SolveArgs& args) {
  try {
    const fairsel::ProblemFile problem =
        fairsel::load_instance_file(args.instance_path);
    const fairsel::ValidationResult check =
        fairsel::validate_instance(problem.instance);
    if (!check.ok()) {
      for (const auto& v : check.violations)
        std::cerr << args.instance_path << ": " << v.path << ": " << v.message
                  << "\n";
      return kExitInvalid;
    }

    fairsel::SolveConfig config;
    config.epsilon = args.eps;
    config.collect_all_runs = args.collect_all;
    config.radius = args.radius;
    config.max_iterations = args.max_iter;

    const fairsel::SolveReport report =
        fairsel::solve(problem.instance, problem.fairness,
                       fairsel::parse_oracle_kind(args.oracle), config);
    fairsel::save_report_file(
        fairsel::report_from_solve(problem.instance, report), args.out_path);
    return kExitOk;
  } catch (const fairsel::SolveError& e) {
    std::cerr << "solve failed: " << e.what() << "\n";
    return e.code() == fairsel::SolveError::Code::kInfeasibleFairness
               ? kExitInfeasible
               : kExitNumerical;
  } catch (const fairsel::NumericalBreakdown& e) {
    std::cerr << "solve failed: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const fairsel::FormatError& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  } catch (const fairsel::OracleError& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "solve failed: " << e.what() << "\n";
    return kExitNumerical;
  }
}

struct VerifyArgs {
  std::string instance_path;
  std::string report_path;
  std::uint64_t cap = std::uint64_t{1} << 20;
  double tol = 1e-3;
};

int run_verify(const VerifyArgs& args) {
  json out;
  out["pass"] = false;
  try {
    const fairsel::ProblemFile problem =
        fairsel::load_instance_file(args.instance_path);
    const fairsel::ValidationResult check =
        fairsel::validate_instance(problem.instance);
    if (!check.ok()) {
      out["reason"] = "invalid instance: " + check.violations.front().path +
                      ": " + check.violations.front().message;
      std::cout << out.dump(2) << "\n";
      return kExitFail;
    }
    const fairsel::ReportData report =
        fairsel::load_report_file(args.report_path);

    const fairsel::BruteForceResult base = fairsel::brute_force_optimum(
        problem.instance, problem.fairness, args.cap);
    if (!base.feasible) {
      out["reason"] =
          "the requirement admits no distribution, but the report claims one";
      std::cout << out.dump(2) << "\n";
      return kExitFail;
    }

    fairsel::SolveReport claimed;
    claimed.distribution = report.distribution;
    claimed.guarantee = {report.rho, report.mu, true};
    claimed.upper_bound = report.upper_bound;
    claimed.epsilon = report.epsilon;
    const fairsel::GuaranteeCheck check_result = fairsel::check_guarantee(
        problem.instance, problem.fairness, claimed, base.opt, args.tol);

    const fairsel::ExpectedUtilities recomputed =
        fairsel::expected_utilities(problem.instance, report.distribution);
    json clauses = json::array();
    for (const auto& c : check_result.clauses) {
      clauses.push_back(
          {{"name", c.name}, {"pass", c.pass}, {"slack", c.slack}});
    }
    bool pass = check_result.pass;
    // The report's own numbers must match what its distribution yields.
    {
      const double drift = std::abs(report.value - recomputed.global);
      const bool ok = drift <= args.tol;
      clauses.push_back({{"name", "claimed_value_consistent"},
                         {"pass", ok},
                         {"slack", args.tol - drift}});
      pass = pass && ok;
    }
    {
      bool ok = static_cast<int>(report.expected_groups.size()) ==
                problem.instance.num_groups();
      double drift = ok ? 0.0 : 1.0;
      if (ok) {
        for (std::size_t t = 0; t < report.expected_groups.size(); ++t) {
          drift = std::max(
              drift, std::abs(report.expected_groups[t] - recomputed.groups[t]));
        }
        ok = drift <= args.tol;
      }
      clauses.push_back({{"name", "claimed_groups_consistent"},
                         {"pass", ok},
                         {"slack", args.tol - drift}});
      pass = pass && ok;
    }

    out["pass"] = pass;
    out["opt"] = base.opt;
    out["claimed_value"] = report.value;
    out["recomputed_value"] = recomputed.global;
    out["clauses"] = std::move(clauses);
    std::cout << out.dump(2) << "\n";
    return pass ? kExitOk : kExitFail;
  } catch (const fairsel::FamilyTooLarge& e) {
    std::cerr << e.what() << "\n";
    return kExitTooLarge;
  } catch (const std::exception& e) {
    out["reason"] = e.what();
    std::cout << out.dump(2) << "\n";
    return kExitFail;
  }
}

struct OracleTestArgs {
  std::string instance_path;
  std::string oracle = "exact";
  int trials = 100;
  std::uint64_t seed = 7;
  std::uint64_t cap = std::uint64_t{1} << 20;
};

int run_oracle_test(const OracleTestArgs& args) {
  try {
    const fairsel::ProblemFile problem =
        fairsel::load_instance_file(args.instance_path);
    const fairsel::ValidationResult check =
        fairsel::validate_instance(problem.instance);
    if (!check.ok()) {
      std::cerr << "invalid instance: " << check.violations.front().path
                << ": " << check.violations.front().message << "\n";
      return kExitInvalid;
    }
    const auto oracle = fairsel::make_oracle(
        fairsel::parse_oracle_kind(args.oracle), problem.instance);
    const double rho = oracle->guarantee().rho;

    double min_ratio = 1.0;
    for (int i = 0; i < args.trials; ++i) {
      const fairsel::WeightedQuery query = fairsel::random_query(
          args.seed + i, problem.instance.num_groups(), 2.0);
      min_ratio = std::min(
          min_ratio,
          fairsel::oracle_cross_check(problem.instance, query, *oracle,
                                      args.cap));
    }

    const bool pass = min_ratio >= rho - 1e-6;
    json out;
    out["oracle"] = args.oracle;
    out["trials"] = args.trials;
    out["rho"] = rho;
    out["min_ratio"] = min_ratio;
    out["pass"] = pass;
    std::cout << out.dump(2) << "\n";
    return pass ? kExitOk : kExitFail;
  } catch (const fairsel::FamilyTooLarge& e) {
    std::cerr << e.what() << "\n";
    return kExitTooLarge;
  } catch (const fairsel::FormatError& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  } catch (const fairsel::OracleError& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randomized set selection under group fairness constraints"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "solve an instance and write a report");
  solve_cmd->add_option("--instance", solve_args.instance_path)->required();
  solve_cmd->add_option("--oracle", solve_args.oracle)
      ->check(CLI::IsMember({"exact", "greedy", "mnl", "sequential"}));
  solve_cmd->add_option("--eps", solve_args.eps);
  solve_cmd->add_option("--out", solve_args.out_path)->required();
  solve_cmd->add_flag("--collect-all", solve_args.collect_all);
  solve_cmd->add_option("--radius", solve_args.radius);
  solve_cmd->add_option("--max-iter", solve_args.max_iter);

  VerifyArgs verify_args;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check a report against its instance");
  verify_cmd->add_option("--instance", verify_args.instance_path)->required();
  verify_cmd->add_option("--report", verify_args.report_path)->required();
  verify_cmd->add_option("--cap", verify_args.cap);
  verify_cmd->add_option("--tol", verify_args.tol);

  OracleTestArgs oracle_args;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle-test", "compare an oracle against enumeration");
  oracle_cmd->add_option("--instance", oracle_args.instance_path)->required();
  oracle_cmd->add_option("--oracle", oracle_args.oracle)
      ->check(CLI::IsMember({"exact", "greedy", "mnl", "sequential"}));
  oracle_cmd->add_option("--trials", oracle_args.trials);
  oracle_cmd->add_option("--seed", oracle_args.seed);
  oracle_cmd->add_option("--cap", oracle_args.cap);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  if (solve_cmd->parsed()) return run_solve(solve_args);
  if (verify_cmd->parsed()) return run_verify(verify_args);
  return run_oracle_test(oracle_args);
}
