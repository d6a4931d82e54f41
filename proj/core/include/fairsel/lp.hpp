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

#ifndef FAIRSEL_LP_H_
#define FAIRSEL_LP_H_

#include <optional>
#include <vector>

#include "fairsel/model.hpp"

namespace fairsel {

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct LinearConstraint {
  std::vector<double> coeffs;
  Relation rel = Relation::kLessEqual;
  double rhs = 0.0;
};

struct LinearProgram {
  Sense sense = Sense::kMaximize;
  std::vector<double> objective;
  std::vector<LinearConstraint> rows;
  // Variable bounds; lower defaults to 0, upper to none.
  std::vector<double> lower_bounds;
  std::vector<std::optional<double>> upper_bounds;

  int num_vars() const { return static_cast<int>(objective.size()); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericalFailure };

struct LpSolution {
  LpStatus status = LpStatus::kNumericalFailure;
  std::vector<double> values;
  double objective_value = 0.0;
  // Largest constraint or bound violation of the returned point.
  double max_violation = 0.0;
};

// Dense two-phase tableau simplex. Deterministic: largest-coefficient
// pivoting with lowest-index tie breaks, switching to Bland's rule after a
// stall threshold to rule out cycling.
LpSolution solve_lp(const LinearProgram& lp, double tol = 1e-8);

// The distribution LP over an explicit list of candidate selections: weights
// x_S in [0,1] with sum <= 1, maximizing expected global utility subject to
// the fairness rows for this variant. Lower bounds are scaled by mu; box
// upper bounds and pairwise slacks are not relaxed.
LinearProgram build_restricted_primal(const Instance& inst,
                                      const FairnessSpec& fairness,
                                      const std::vector<Selection>& candidates,
                                      double mu);

}  // namespace fairsel

#endif  // FAIRSEL_LP_H_
