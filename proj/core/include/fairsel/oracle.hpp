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

#ifndef FAIRSEL_ORACLE_H_
#define FAIRSEL_ORACLE_H_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairsel/model.hpp"

namespace fairsel {

// One coefficient per group utility: the subproblem maximizes
// f(S) + sum_t coeffs[t] * g_t(S) over the feasible family.
struct WeightedQuery {
  std::vector<double> coeffs;
};

struct OracleResult {
  Selection selection;
  double value = 0.0;  // composite value of the returned selection
};

// A (rho, mu)-guarantee: the returned selection achieves at least rho times
// the optimum composite value whenever the coefficients are admissible.
struct OracleGuarantee {
  double rho = 1.0;
  double mu = 1.0;
  bool accepts_negative_coeffs = false;
};

class OracleError : public std::runtime_error {
 public:
  explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

// f(sel) + sum_t coeffs[t] * g_t(sel), with no family membership check.
double composite_value(const Instance& inst, const Selection& sel,
                       const WeightedQuery& query);

struct OracleConfig {
  std::uint64_t enumeration_cap = std::uint64_t{1} << 20;
  std::uint64_t sequential_exact_cap = 5040;  // enumerate orderings up to 7!
};

// Exhaustive search; ties broken by enumeration order (size then
// lexicographic for sets, lexicographic for orderings).
OracleResult fairmax_exact(const Instance& inst, const WeightedQuery& query,
                           std::uint64_t cap);

// Lazy greedy for monotone submodular composites under a cardinality bound.
// Requires nonnegative coefficients.
OracleResult fairmax_greedy(const Instance& inst, const WeightedQuery& query);

// Revenue-ordered search for multinomial-logit instances: items are sorted by
// adjusted revenue and only the prefixes of that order (plus the empty set)
// are evaluated. Exact for this instance class.
OracleResult fairmax_mnl(const Instance& inst, const WeightedQuery& query);

// Ordered selection for position-discounted composites: exhaustive when the
// number of orderings is at most exact_cap, otherwise greedy over
// (item, position-bound) pairs with a 1/2 guarantee.
OracleResult fairmax_sequential(const Instance& inst,
                                const WeightedQuery& query,
                                std::uint64_t exact_cap);

enum class OracleKind { kExact, kGreedy, kMnl, kSequential };

const char* oracle_kind_name(OracleKind kind);
OracleKind parse_oracle_kind(const std::string& name);

class FairMaxOracle {
 public:
  virtual ~FairMaxOracle() = default;
  virtual OracleResult query(const WeightedQuery& query) const = 0;
  virtual OracleGuarantee guarantee() const = 0;
  virtual OracleKind kind() const = 0;
};

// Binds an oracle to an instance, checking that the instance lies in the
// class the oracle is exact or approximate for. Throws OracleError when it
// does not.
std::unique_ptr<FairMaxOracle> make_oracle(OracleKind kind,
                                           const Instance& inst,
                                           const OracleConfig& config = {});

}  // namespace fairsel

#endif  // FAIRSEL_ORACLE_H_
