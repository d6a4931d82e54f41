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

#include "fairsel/variant.hpp"

#include <stdexcept>

namespace fairsel {

Variant::Variant(Kind kind, int m, FairnessSpec fairness)
    : kind_(kind), m_(m), fairness_(std::move(fairness)) {}

Variant Variant::from_fairness(const Instance& inst,
                               const FairnessSpec& fairness) {
  ValidationResult check = validate_fairness(inst, fairness);
  if (!check.ok()) {
    throw std::invalid_argument("invalid fairness requirement: " +
                                check.violations.front().path + ": " +
                                check.violations.front().message);
  }
  Kind kind = Kind::kLowerBounds;
  if (std::holds_alternative<BoxSpec>(fairness)) kind = Kind::kBox;
  if (std::holds_alternative<PairwiseSpec>(fairness)) kind = Kind::kPairwise;
  return Variant(kind, inst.num_groups(), fairness);
}

int Variant::dual_dimension() const {
  switch (kind_) {
    case Kind::kLowerBounds: return m_ + 1;
    case Kind::kBox: return 2 * m_ + 1;
    case Kind::kPairwise: return m_ * (m_ - 1) + 1;
  }
  return 0;
}

int Variant::pair_index(int t, int u) const {
  return t * (m_ - 1) + (u < t ? u : u - 1);
}

std::vector<double> Variant::objective_normal(double mu) const {
  std::vector<double> normal(dual_dimension(), 0.0);
  normal.back() = 1.0;  // the w coordinate
  if (const auto* lower = std::get_if<LowerBoundsSpec>(&fairness_)) {
    for (int t = 0; t < m_; ++t) normal[t] = -mu * lower->alpha[t];
  } else if (const auto* box = std::get_if<BoxSpec>(&fairness_)) {
    for (int t = 0; t < m_; ++t) {
      normal[t] = -mu * box->alpha[t];
      normal[m_ + t] = box->beta[t];
    }
  } else if (const auto* pair = std::get_if<PairwiseSpec>(&fairness_)) {
    for (int t = 0; t < m_; ++t) {
      for (int u = 0; u < m_; ++u) {
        if (t == u) continue;
        normal[pair_index(t, u)] = pair->gamma[t][u];
      }
    }
  }
  return normal;
}

WeightedQuery Variant::effective_coeffs(const DualPoint& point) const {
  WeightedQuery query;
  query.coeffs.assign(m_, 0.0);
  switch (kind_) {
    case Kind::kLowerBounds:
      for (int t = 0; t < m_; ++t) query.coeffs[t] = point[t];
      break;
    case Kind::kBox:
      for (int t = 0; t < m_; ++t)
        query.coeffs[t] = point[t] - point[m_ + t];
      break;
    case Kind::kPairwise:
      // z_{t,u} rewards group u and penalizes group t.
      for (int t = 0; t < m_; ++t) {
        for (int u = 0; u < m_; ++u) {
          if (t == u) continue;
          const double z = point[pair_index(t, u)];
          query.coeffs[u] += z;
          query.coeffs[t] -= z;
        }
      }
      break;
  }
  return query;
}

std::vector<double> Variant::set_cut_normal(
    const std::vector<double>& group_values) const {
  std::vector<double> normal(dual_dimension(), 0.0);
  normal.back() = -1.0;  // ... - w <= -f(A)
  switch (kind_) {
    case Kind::kLowerBounds:
      for (int t = 0; t < m_; ++t) normal[t] = group_values[t];
      break;
    case Kind::kBox:
      for (int t = 0; t < m_; ++t) {
        normal[t] = group_values[t];
        normal[m_ + t] = -group_values[t];
      }
      break;
    case Kind::kPairwise:
      for (int t = 0; t < m_; ++t) {
        for (int u = 0; u < m_; ++u) {
          if (t == u) continue;
          normal[pair_index(t, u)] = group_values[u] - group_values[t];
        }
      }
      break;
  }
  return normal;
}

}  // namespace fairsel
