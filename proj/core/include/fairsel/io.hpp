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

#ifndef FAIRSEL_IO_H_
#define FAIRSEL_IO_H_

#include <stdexcept>
#include <string>

#include "fairsel/model.hpp"
#include "fairsel/solver.hpp"

namespace fairsel {

class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

struct ProblemFile {
  Instance instance;
  FairnessSpec fairness;
};

// Throws FormatError on malformed documents; performs no semantic
// validation beyond shape (validate_instance handles that).
ProblemFile parse_instance_json(const std::string& text);
ProblemFile load_instance_file(const std::string& path);
std::string instance_to_json(const ProblemFile& problem);
void save_instance_file(const ProblemFile& problem, const std::string& path);

// The report document: what a solve run claims about its output.
struct ReportData {
  std::string status;
  double value = 0.0;
  double upper_bound = 0.0;
  double rho = 1.0;
  double mu = 1.0;
  double epsilon = 0.0;
  bool ordered = false;  // distribution entries are orderings, not sets
  SolutionDistribution distribution;
  std::vector<double> expected_groups;
  int f_prime_size = 0;
};

ReportData report_from_solve(const Instance& inst, const SolveReport& report);
std::string report_to_json(const ReportData& data);
ReportData parse_report_json(const std::string& text);
ReportData load_report_file(const std::string& path);
void save_report_file(const ReportData& data, const std::string& path);

}  // namespace fairsel

#endif  // FAIRSEL_IO_H_
