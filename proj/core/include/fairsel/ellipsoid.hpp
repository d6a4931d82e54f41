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

#ifndef FAIRSEL_ELLIPSOID_H_
#define FAIRSEL_ELLIPSOID_H_

#include <limits>
#include <stdexcept>
#include <vector>

#include "fairsel/oracle.hpp"
#include "fairsel/variant.hpp"

namespace fairsel {

class NumericalBreakdown : public std::runtime_error {
 public:
  explicit NumericalBreakdown(const std::string& what)
      : std::runtime_error(what) {}
};

// The halfspace normal . p <= offset, tagged with what produced it.
struct Hyperplane {
  enum class Source { kObjective, kNonnegativity, kSet };

  std::vector<double> normal;
  double offset = 0.0;
  Source source = Source::kObjective;
  int coordinate = -1;  // for nonnegativity cuts
  Selection selection;  // for set cuts
};

// E = { p : (p - center)' shape^{-1} (p - center) <= 1 }.
struct EllipsoidState {
  std::vector<double> center;
  std::vector<std::vector<double>> shape;
};

// A ball of radius sqrt(dim) * radius centered at (radius/2, ...), which
// covers the box [0, radius]^dim with room to spare.
EllipsoidState initial_ellipsoid(int dim, double radius);

// Central-cut update through the hyperplane's normal direction. Throws
// NumericalBreakdown when the quadratic form degenerates.
EllipsoidState ellipsoid_step(const EllipsoidState& state,
                              const Hyperplane& cut);

// log det of the shape matrix via Cholesky; throws NumericalBreakdown when
// the matrix is not positive definite.
double shape_log_det(const std::vector<std::vector<double>>& shape);

struct SeparationResult {
  bool inside = false;
  Hyperplane cut;             // meaningful only when !inside
  double margin = 0.0;        // normal . p - offset of the emitted cut
  bool queried_oracle = false;
  OracleResult oracle_result;  // meaningful only when queried_oracle
};

// Decides membership of a dual point in the level set at L. Checks run in a
// fixed order: nonnegativity first (lowest violated coordinate), then the
// dual objective, then the subproblem oracle.
SeparationResult separate(const DualPoint& point, double level,
                          const Variant& variant, const FairMaxOracle& oracle,
                          const Instance& inst);

struct FeasibilityConfig {
  double radius = 1.0;
  long max_iterations = -1;  // <0 derives the cap from dim and the floor
  double radius_floor_rel = 1e-7;
};

struct FeasibilityDiagnostics {
  long iterations = 0;
  long set_cuts = 0;
  double min_cut_margin = std::numeric_limits<double>::infinity();
  double min_logdet_drop = std::numeric_limits<double>::infinity();
  // The shape matrix lost positive definiteness before the volume floor;
  // treated as exhausted volume, since it can only happen on a collapsing
  // ellipsoid.
  bool degenerate = false;
};

struct FeasibilityOutcome {
  bool non_empty = false;
  DualPoint witness;           // when non_empty: a point inside the level set
  OracleResult certificate;    // the oracle's answer at the witness
  // Every distinct selection that produced a set cut, in first-cut order.
  std::vector<Selection> violated_sets;
  FeasibilityDiagnostics diagnostics;
};

// Runs the central-cut method until a point of the level set at L is found,
// the iteration cap is reached, or the volume proxy drops below the floor.
FeasibilityOutcome ellipsoid_feasible(double level, const Variant& variant,
                                      const FairMaxOracle& oracle,
                                      const Instance& inst,
                                      const FeasibilityConfig& config);

}  // namespace fairsel

#endif  // FAIRSEL_ELLIPSOID_H_
