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

#include "fairsel/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fairsel {
namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kReducedCostEps = 1e-9;

struct Tableau {
  std::vector<std::vector<double>> rows;  // coefficient matrix
  std::vector<double> rhs;
  std::vector<int> basis;      // basic column per row
  std::vector<char> artificial;  // per column
  std::vector<double> zrow;    // reduced costs for the current phase
  double zval = 0.0;

  int num_rows() const { return static_cast<int>(rows.size()); }
  int num_cols() const { return static_cast<int>(artificial.size()); }

  void pivot(int r, int s) {
    const double piv = rows[r][s];
    for (double& v : rows[r]) v /= piv;
    rhs[r] /= piv;
    rows[r][s] = 1.0;  // keep the unit entry exact
    for (int i = 0; i < num_rows(); ++i) {
      if (i == r) continue;
      const double f = rows[i][s];
      if (f == 0.0) continue;
      for (int j = 0; j < num_cols(); ++j) rows[i][j] -= f * rows[r][j];
      rows[i][s] = 0.0;
      rhs[i] -= f * rhs[r];
    }
    const double f = zrow[s];
    if (f != 0.0) {
      for (int j = 0; j < num_cols(); ++j) zrow[j] -= f * rows[r][j];
      zrow[s] = 0.0;
      zval += f * rhs[r];
    }
    basis[r] = s;
  }

  // Reduced costs of cost vector c (maximization) under the current basis.
  void price_out(const std::vector<double>& c) {
    zrow = c;
    zval = 0.0;
    for (int i = 0; i < num_rows(); ++i) {
      const double cb = c[basis[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < num_cols(); ++j) zrow[j] -= cb * rows[i][j];
      zval += cb * rhs[i];
    }
  }
};

enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit };

// Runs simplex iterations until no entering column improves the objective.
PhaseResult run_phase(Tableau& t, long& iterations, long iteration_cap,
                      long bland_after) {
  while (true) {
    if (iterations++ > iteration_cap) return PhaseResult::kIterationLimit;
    const bool bland = iterations > bland_after;
    int entering = -1;
    double best = kReducedCostEps;
    for (int j = 0; j < t.num_cols(); ++j) {
      if (t.artificial[j]) continue;
      if (t.zrow[j] <= kReducedCostEps) continue;
      if (bland) {
        entering = j;
        break;
      }
      if (t.zrow[j] > best) {
        best = t.zrow[j];
        entering = j;
      }
    }
    if (entering < 0) return PhaseResult::kOptimal;

    int leaving = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < t.num_rows(); ++i) {
      const double a = t.rows[i][entering];
      if (a <= kPivotEps) continue;
      const double ratio = t.rhs[i] / a;
      if (leaving < 0 || ratio < best_ratio - 1e-12 ||
          (std::abs(ratio - best_ratio) <= 1e-12 &&
           t.basis[i] < t.basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) return PhaseResult::kUnbounded;
    t.pivot(leaving, entering);
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double tol) {
  const int nv = lp.num_vars();
  for (const auto& row : lp.rows) {
    if (static_cast<int>(row.coeffs.size()) != nv)
      throw std::invalid_argument("constraint width != variable count");
  }
  if (!lp.lower_bounds.empty() &&
      static_cast<int>(lp.lower_bounds.size()) != nv)
    throw std::invalid_argument("lower bound count != variable count");
  if (!lp.upper_bounds.empty() &&
      static_cast<int>(lp.upper_bounds.size()) != nv)
    throw std::invalid_argument("upper bound count != variable count");

  std::vector<double> lb(nv, 0.0);
  if (!lp.lower_bounds.empty()) lb = lp.lower_bounds;

  LpSolution out;

  // Shift to y = x - lb >= 0 and fold upper bounds into rows.
  struct NormRow {
    std::vector<double> coeffs;
    Relation rel;
    double rhs;
  };
  std::vector<NormRow> rows;
  rows.reserve(lp.rows.size() + nv);
  for (const auto& row : lp.rows) {
    double shift = 0.0;
    for (int j = 0; j < nv; ++j) shift += row.coeffs[j] * lb[j];
    rows.push_back({row.coeffs, row.rel, row.rhs - shift});
  }
  if (!lp.upper_bounds.empty()) {
    for (int j = 0; j < nv; ++j) {
      if (!lp.upper_bounds[j].has_value()) continue;
      const double span = *lp.upper_bounds[j] - lb[j];
      if (span < 0.0) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
      std::vector<double> coeffs(nv, 0.0);
      coeffs[j] = 1.0;
      rows.push_back({std::move(coeffs), Relation::kLessEqual, span});
    }
  }

  double max_rhs = 0.0;
  for (auto& row : rows) {
    if (row.rhs < 0.0) {
      for (double& v : row.coeffs) v = -v;
      row.rhs = -row.rhs;
      row.rel = row.rel == Relation::kLessEqual ? Relation::kGreaterEqual
                : row.rel == Relation::kGreaterEqual ? Relation::kLessEqual
                                                     : Relation::kEqual;
    }
    max_rhs = std::max(max_rhs, row.rhs);
  }

  const int nr = static_cast<int>(rows.size());
  int num_slack = 0, num_artificial = 0;
  for (const auto& row : rows) {
    if (row.rel != Relation::kEqual) ++num_slack;
    if (row.rel != Relation::kLessEqual) ++num_artificial;
  }
  const int ncols = nv + num_slack + num_artificial;

  Tableau t;
  t.rows.assign(nr, std::vector<double>(ncols, 0.0));
  t.rhs.resize(nr);
  t.basis.resize(nr);
  t.artificial.assign(ncols, 0);

  std::vector<double> phase1_cost(ncols, 0.0);
  int slack_at = nv;
  int art_at = nv + num_slack;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nv; ++j) t.rows[i][j] = rows[i].coeffs[j];
    t.rhs[i] = rows[i].rhs;
    if (rows[i].rel == Relation::kLessEqual) {
      t.rows[i][slack_at] = 1.0;
      t.basis[i] = slack_at++;
    } else {
      if (rows[i].rel == Relation::kGreaterEqual)
        t.rows[i][slack_at++] = -1.0;
      t.rows[i][art_at] = 1.0;
      t.artificial[art_at] = 1;
      phase1_cost[art_at] = -1.0;
      t.basis[i] = art_at++;
    }
  }

  const long iteration_cap = 5000 + 200L * (nr + ncols);
  const long bland_after = 500 + 50L * (nr + ncols);
  long iterations = 0;

  if (num_artificial > 0) {
    t.price_out(phase1_cost);
    const PhaseResult r = run_phase(t, iterations, iteration_cap, bland_after);
    if (r != PhaseResult::kOptimal) {
      out.status = LpStatus::kNumericalFailure;
      return out;
    }
    if (t.zval < -tol * (1.0 + max_rhs)) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    // Drive leftover artificials out of the basis; rows that admit no pivot
    // are redundant and dropped.
    for (int i = t.num_rows() - 1; i >= 0; --i) {
      if (!t.artificial[t.basis[i]]) continue;
      int pivot_col = -1;
      double best = 1e-7;
      for (int j = 0; j < t.num_cols(); ++j) {
        if (t.artificial[j]) continue;
        if (std::abs(t.rows[i][j]) > best) {
          best = std::abs(t.rows[i][j]);
          pivot_col = j;
        }
      }
      if (pivot_col >= 0) {
        t.pivot(i, pivot_col);
      } else {
        t.rows.erase(t.rows.begin() + i);
        t.rhs.erase(t.rhs.begin() + i);
        t.basis.erase(t.basis.begin() + i);
      }
    }
  }

  std::vector<double> phase2_cost(ncols, 0.0);
  for (int j = 0; j < nv; ++j)
    phase2_cost[j] =
        lp.sense == Sense::kMaximize ? lp.objective[j] : -lp.objective[j];
  t.price_out(phase2_cost);
  const PhaseResult r = run_phase(t, iterations, iteration_cap, bland_after);
  if (r == PhaseResult::kIterationLimit) {
    out.status = LpStatus::kNumericalFailure;
    return out;
  }
  if (r == PhaseResult::kUnbounded) {
    out.status = LpStatus::kUnbounded;
    return out;
  }

  std::vector<double> y(ncols, 0.0);
  for (int i = 0; i < t.num_rows(); ++i) y[t.basis[i]] = t.rhs[i];
  out.values.resize(nv);
  for (int j = 0; j < nv; ++j) out.values[j] = y[j] + lb[j];

  out.objective_value = 0.0;
  for (int j = 0; j < nv; ++j)
    out.objective_value += lp.objective[j] * out.values[j];

  out.max_violation = 0.0;
  auto note = [&](double v) { out.max_violation = std::max(out.max_violation, v); };
  for (const auto& row : lp.rows) {
    double lhs = 0.0;
    for (int j = 0; j < nv; ++j) lhs += row.coeffs[j] * out.values[j];
    switch (row.rel) {
      case Relation::kLessEqual: note(lhs - row.rhs); break;
      case Relation::kGreaterEqual: note(row.rhs - lhs); break;
      case Relation::kEqual: note(std::abs(lhs - row.rhs)); break;
    }
  }
  for (int j = 0; j < nv; ++j) {
    note(lb[j] - out.values[j]);
    if (!lp.upper_bounds.empty() && lp.upper_bounds[j].has_value())
      note(out.values[j] - *lp.upper_bounds[j]);
  }

  out.status = LpStatus::kOptimal;
  return out;
}

LinearProgram build_restricted_primal(const Instance& inst,
                                      const FairnessSpec& fairness,
                                      const std::vector<Selection>& candidates,
                                      double mu) {
  const int m = inst.num_groups();
  const int nv = static_cast<int>(candidates.size());

  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  lp.objective.resize(nv);
  lp.lower_bounds.assign(nv, 0.0);
  lp.upper_bounds.assign(nv, 1.0);

  std::vector<std::vector<double>> g(m, std::vector<double>(nv));
  for (int j = 0; j < nv; ++j) {
    lp.objective[j] = eval_spec(inst, inst.global, candidates[j]);
    for (int t = 0; t < m; ++t)
      g[t][j] = eval_spec(inst, inst.group_utils[t], candidates[j]);
  }

  if (const auto* lower = std::get_if<LowerBoundsSpec>(&fairness)) {
    for (int t = 0; t < m; ++t)
      lp.rows.push_back({g[t], Relation::kGreaterEqual, mu * lower->alpha[t]});
  } else if (const auto* box = std::get_if<BoxSpec>(&fairness)) {
    for (int t = 0; t < m; ++t)
      lp.rows.push_back({g[t], Relation::kGreaterEqual, mu * box->alpha[t]});
    for (int t = 0; t < m; ++t)
      lp.rows.push_back({g[t], Relation::kLessEqual, box->beta[t]});
  } else if (const auto* pair = std::get_if<PairwiseSpec>(&fairness)) {
    for (int tt = 0; tt < m; ++tt) {
      for (int u = 0; u < m; ++u) {
        if (tt == u) continue;
        std::vector<double> coeffs(nv);
        for (int j = 0; j < nv; ++j) coeffs[j] = g[tt][j] - g[u][j];
        lp.rows.push_back(
            {std::move(coeffs), Relation::kLessEqual, pair->gamma[tt][u]});
      }
    }
  }

  std::vector<double> mass(nv, 1.0);
  lp.rows.push_back({std::move(mass), Relation::kLessEqual, 1.0});
  return lp;
}

}  // namespace fairsel
