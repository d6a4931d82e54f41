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

#include "fairsel/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fairsel {
namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

EllipsoidState initial_ellipsoid(int dim, double radius) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("radius must be positive and finite");
  EllipsoidState state;
  state.center.assign(dim, radius / 2.0);
  state.shape.assign(dim, std::vector<double>(dim, 0.0));
  for (int i = 0; i < dim; ++i) state.shape[i][i] = dim * radius * radius;
  return state;
}

EllipsoidState ellipsoid_step(const EllipsoidState& state,
                              const Hyperplane& cut) {
  const int d = static_cast<int>(state.center.size());
  const std::vector<double>& a = cut.normal;

  std::vector<double> pa(d, 0.0);
  for (int i = 0; i < d; ++i) pa[i] = dot(state.shape[i], a);
  const double q = dot(a, pa);
  if (!(q > 0.0) || !std::isfinite(q))
    throw NumericalBreakdown(
        "cut direction has nonpositive quadratic form; the ellipsoid has "
        "degenerated");
  const double s = std::sqrt(q);
  std::vector<double> g(d);
  for (int i = 0; i < d; ++i) g[i] = pa[i] / s;

  EllipsoidState next;
  next.center.resize(d);
  for (int i = 0; i < d; ++i)
    next.center[i] = state.center[i] - g[i] / (d + 1);

  next.shape.assign(d, std::vector<double>(d, 0.0));
  if (d == 1) {
    // A halved interval is its own minimal cover.
    next.shape[0][0] = state.shape[0][0] / 4.0;
  } else {
    const double scale = static_cast<double>(d) * d / (d * d - 1.0);
    const double rank1 = 2.0 / (d + 1);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j)
        next.shape[i][j] = scale * (state.shape[i][j] - rank1 * g[i] * g[j]);
    }
    // Keep the matrix exactly symmetric against drift.
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const double v = 0.5 * (next.shape[i][j] + next.shape[j][i]);
        next.shape[i][j] = v;
        next.shape[j][i] = v;
      }
    }
  }
  return next;
}

double shape_log_det(const std::vector<std::vector<double>>& shape) {
  const int d = static_cast<int>(shape.size());
  std::vector<std::vector<double>> chol(d, std::vector<double>(d, 0.0));
  double logdet = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = shape[i][j];
      for (int k = 0; k < j; ++k) s -= chol[i][k] * chol[j][k];
      if (i == j) {
        if (!(s > 0.0) || !std::isfinite(s))
          throw NumericalBreakdown("shape matrix is not positive definite");
        chol[i][i] = std::sqrt(s);
        logdet += 2.0 * std::log(chol[i][i]);
      } else {
        chol[i][j] = s / chol[j][j];
      }
    }
  }
  return logdet;
}

SeparationResult separate(const DualPoint& point, double level,
                          const Variant& variant, const FairMaxOracle& oracle,
                          const Instance& inst) {
  const int d = variant.dual_dimension();
  if (static_cast<int>(point.size()) != d)
    throw std::invalid_argument("dual point has wrong dimension");
  for (double v : point) {
    if (!std::isfinite(v))
      throw NumericalBreakdown("dual point is not finite");
  }

  SeparationResult result;

  for (int j = 0; j < d; ++j) {
    if (point[j] < 0.0) {
      Hyperplane cut;
      cut.normal.assign(d, 0.0);
      cut.normal[j] = -1.0;
      cut.offset = 0.0;
      cut.source = Hyperplane::Source::kNonnegativity;
      cut.coordinate = j;
      result.cut = std::move(cut);
      result.margin = -point[j];
      return result;
    }
  }

  const double mu = oracle.guarantee().mu;
  {
    Hyperplane cut;
    cut.normal = variant.objective_normal(mu);
    cut.offset = level;
    cut.source = Hyperplane::Source::kObjective;
    const double margin = dot(cut.normal, point) - cut.offset;
    if (margin > 0.0) {
      result.cut = std::move(cut);
      result.margin = margin;
      return result;
    }
  }

  const WeightedQuery coeffs = variant.effective_coeffs(point);
  result.queried_oracle = true;
  result.oracle_result = oracle.query(coeffs);
  const Selection& best = result.oracle_result.selection;

  std::vector<double> group_values(inst.num_groups());
  for (int t = 0; t < inst.num_groups(); ++t)
    group_values[t] = eval_spec(inst, inst.group_utils[t], best);
  Hyperplane cut;
  cut.normal = variant.set_cut_normal(group_values);
  cut.offset = -eval_spec(inst, inst.global, best);
  cut.source = Hyperplane::Source::kSet;
  cut.selection = best;
  const double margin = dot(cut.normal, point) - cut.offset;
  if (margin > 0.0) {
    result.cut = std::move(cut);
    result.margin = margin;
    return result;
  }

  result.inside = true;
  return result;
}

FeasibilityOutcome ellipsoid_feasible(double level, const Variant& variant,
                                      const FairMaxOracle& oracle,
                                      const Instance& inst,
                                      const FeasibilityConfig& config) {
  const int d = variant.dual_dimension();
  if (!(config.radius > 0.0))
    throw std::invalid_argument("feasibility radius must be positive");
  const double floor = config.radius_floor_rel * config.radius;
  long cap = config.max_iterations;
  if (cap < 0) {
    cap = static_cast<long>(
        std::ceil(2.0 * d * (d + 1) * std::log(config.radius / floor)));
  }

  FeasibilityOutcome outcome;
  EllipsoidState state = initial_ellipsoid(d, config.radius);
  double logdet = shape_log_det(state.shape);
  std::set<Selection> seen;

  for (long iter = 0; iter < cap; ++iter) {
    // Volume proxy: the geometric-mean semi-axis of the current ellipsoid.
    if (std::exp(logdet / (2.0 * d)) <= floor) break;

    // A collapsing ellipsoid can degenerate to roundoff before the volume
    // proxy reaches the floor: the center drifts non-finite or the shape
    // loses positive definiteness. The level set has been squeezed into
    // nothing either way, so end the run as empty; non-empty is only ever
    // reported with a verified witness.
    try {
      SeparationResult sep = separate(state.center, level, variant, oracle,
                                      inst);
      if (sep.inside) {
        outcome.non_empty = true;
        outcome.witness = state.center;
        outcome.certificate = sep.oracle_result;
        return outcome;
      }
      if (sep.cut.source == Hyperplane::Source::kSet) {
        ++outcome.diagnostics.set_cuts;
        if (seen.insert(sep.cut.selection).second)
          outcome.violated_sets.push_back(sep.cut.selection);
      }
      outcome.diagnostics.min_cut_margin =
          std::min(outcome.diagnostics.min_cut_margin, sep.margin);

      state = ellipsoid_step(state, sep.cut);
      const double next_logdet = shape_log_det(state.shape);
      outcome.diagnostics.min_logdet_drop =
          std::min(outcome.diagnostics.min_logdet_drop, logdet - next_logdet);
      logdet = next_logdet;
    } catch (const NumericalBreakdown&) {
      outcome.diagnostics.degenerate = true;
      outcome.diagnostics.iterations = iter + 1;
      return outcome;
    }
    outcome.diagnostics.iterations = iter + 1;
  }
  return outcome;
}

}  // namespace fairsel
