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

#include <benchmark/benchmark.h>

#include "fairsel/oracle.hpp"
#include "fairsel/solver.hpp"
#include "fairsel/verify.hpp"

namespace {

void BM_ExactOracleQuery(benchmark::State& state) {
  const auto problem = fairsel::make_assortment_problem(11, 12);
  const auto oracle =
      fairsel::make_oracle(fairsel::OracleKind::kExact, problem.instance);
  const auto query =
      fairsel::random_query(3, problem.instance.num_groups(), 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle->query(query).value);
  }
}
BENCHMARK(BM_ExactOracleQuery);

void BM_GreedyOracle(benchmark::State& state) {
  auto problem = fairsel::make_coverage_problem(5);
  const auto query =
      fairsel::random_query(4, problem.instance.num_groups(), 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fairsel::fairmax_greedy(problem.instance, query).value);
  }
}
BENCHMARK(BM_GreedyOracle);

void BM_RestrictedLp(benchmark::State& state) {
  const auto problem = fairsel::make_lower_bounds_problem(17);
  const auto candidates =
      fairsel::enumerate_feasible(problem.instance, std::uint64_t{1} << 16);
  const auto lp = fairsel::build_restricted_primal(
      problem.instance, problem.fairness, candidates, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fairsel::solve_lp(lp).objective_value);
  }
}
BENCHMARK(BM_RestrictedLp);

void BM_SolveLowerBounds(benchmark::State& state) {
  const auto problem = fairsel::make_lower_bounds_problem(23);
  fairsel::SolveConfig config;
  config.epsilon = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fairsel::solve(problem.instance, problem.fairness,
                       fairsel::OracleKind::kExact, config)
            .expected_global);
  }
}
BENCHMARK(BM_SolveLowerBounds);

}  // namespace

BENCHMARK_MAIN();
