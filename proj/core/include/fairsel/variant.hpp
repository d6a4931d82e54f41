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

#ifndef FAIRSEL_VARIANT_H_
#define FAIRSEL_VARIANT_H_

#include <vector>

#include "fairsel/model.hpp"
#include "fairsel/oracle.hpp"

namespace fairsel {

// A point in the dual space of the relaxed distribution LP. Coordinates are
// the per-constraint multipliers followed by the max-composite bound w:
//   lower bounds:  (z_1..z_m, w)
//   box:           (z_1..z_m, u_1..u_m, w)
//   pairwise:      (z_{t,u} over ordered pairs t != u, row-major, then w)
using DualPoint = std::vector<double>;

// Ties a fairness requirement to the dual-space geometry the feasibility
// search works in.
class Variant {
 public:
  enum class Kind { kLowerBounds, kBox, kPairwise };

  // Throws std::invalid_argument when the requirement does not match the
  // instance's group count or carries malformed bounds.
  static Variant from_fairness(const Instance& inst,
                               const FairnessSpec& fairness);

  Kind kind() const { return kind_; }
  int num_groups() const { return m_; }
  const FairnessSpec& fairness() const { return fairness_; }
  int dual_dimension() const;
  bool needs_signed_coeffs() const { return kind_ != Kind::kLowerBounds; }

  // Row-major index of the multiplier for ordered pair (t, u), t != u.
  int pair_index(int t, int u) const;

  // Normal of the dual objective, so that normal . p is the dual objective
  // value. Lower bounds are relaxed by mu; box upper bounds and pairwise
  // slacks are not.
  std::vector<double> objective_normal(double mu) const;

  // Group coefficients c with sum_t c_t g_t(S) equal to the multiplier
  // pattern this variant applies to a selection.
  WeightedQuery effective_coeffs(const DualPoint& point) const;

  // Normal of the constraint w >= f(A) + pattern(A), given g_t(A); pairing
  // it with offset -f(A) yields the halfspace normal . p <= offset.
  std::vector<double> set_cut_normal(
      const std::vector<double>& group_values) const;

 private:
  Variant(Kind kind, int m, FairnessSpec fairness);

  Kind kind_;
  int m_;
  FairnessSpec fairness_;
};

}  // namespace fairsel

#endif  // FAIRSEL_VARIANT_H_
