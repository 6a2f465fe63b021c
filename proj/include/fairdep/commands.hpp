/*
 * Copyright (c) 2026, The fairdep Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

// Subcommands of the fairdep tool. Each returns a process exit code, writes
// its result to `out` only on success and diagnostics to `err`.

namespace fairdep {

enum ExitCode : int {
  kExitOk = 0,
  kExitBadInput = 1,
  kExitDegenerate = 2,
  kExitNoRoot = 3,
  kExitNoConvergence = 4,
};

/// Table source shared by measure and ess. "-" reads standard input.
struct TableSource {
  std::string input;
  std::string format = "auto";
  /// "A,B" column names when the input is a dataset; default is the first two columns.
  std::string pair;
  char delimiter = ',';
};

struct MeasureOptions {
  TableSource source;
  std::string dof = "effective";
};

struct RankOptions {
  std::string input;
  std::string class_column;
  std::string measure = "si";
  double alpha = 0.05;
  std::string dof = "effective";
  char delimiter = ',';
};

struct EssOptions {
  TableSource source;
  /// "uniform" or a path to a matrix of nonnegative prior weights (normalized on load).
  std::string prior = "uniform";
  double tol = 1e-10;
  std::string dof = "effective";
  bool curve = false;
  /// Grid for the constraint curve; empty means 0 to 4x the exact root in 100 steps.
  std::string curve_grid;
};

struct ExperimentOptions {
  std::string name;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<int> replicates;
  std::optional<double> z;
  std::string n_values;
  std::string z_grid;
  std::string measures;
  std::string dof = "nominal";
  /// ess-curve only.
  TableSource source;
  std::string prior = "uniform";
  std::string curve_grid;
};

int cmd_measure(const MeasureOptions& options, std::ostream& out, std::ostream& err);
int cmd_rank(const RankOptions& options, std::ostream& out, std::ostream& err);
int cmd_ess(const EssOptions& options, std::ostream& out, std::ostream& err);
/// With an output path the curve goes to that file and a summary to `out`; otherwise the curve goes to `out`.
int cmd_experiment(const ExperimentOptions& options, std::ostream& out, std::ostream& err);

}  // namespace fairdep
