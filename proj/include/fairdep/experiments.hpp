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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairdep/measures.hpp"
#include "fairdep/ranking.hpp"
#include "fairdep/tables.hpp"

// Seeded resampling studies: choosing between 2 and 4 states for a pair of
// variables, and picking the single best feature from a naive Bayes model
// that mixes binary and four-state features.

namespace fairdep {

/// 4x4 table over A = (block, within) and B = (block, within), the product of
/// a fixed dependent 2x2 between blocks and a within-block 2x2 whose
/// dependence grows with z (none at z = 0). Marginals are uniform, and merging
/// states {0,1} and {2,3} on both axes returns the same block table for every
/// z, so only the within-block part argues for keeping four states.
/// Throws InvalidInput unless 0 <= z <= 0.125.
ProbTable fig2_distribution(double z);

/// {{0,1},{2,3}}.
Partition block_partition();

/// Class Y with four equiprobable states and twenty conditionally independent
/// features. X1..X10 are binary with P(X=1 | Y) = (.6, .8, .3, .1); X11..X20
/// have four states, equal to Y with probability 1/4 + 3z and in each other
/// state with probability 1/4 - z.
struct NaiveBayesModel {
  static constexpr std::array<double, 4> binary_p1{0.6, 0.8, 0.3, 0.1};
  static constexpr std::size_t binary_features = 10;
  static constexpr std::size_t four_state_features = 10;

  /// Throws InvalidInput unless 0 <= z <= 1/4.
  explicit NaiveBayesModel(double z);

  [[nodiscard]] double z() const noexcept { return z_; }
  [[nodiscard]] std::array<double, 4> four_state_conditional(std::size_t y) const;

 private:
  double z_;
};

enum class FeatureFamily { binary, four_state };

/// Exact I(Y; X) for one feature of the family.
double nb_true_mi(const NaiveBayesModel& model, FeatureFamily family);

/// z at which both families carry the same true information (bisection to 1e-12).
double nb_equal_information_z();

struct NbFeature {
  std::string id;
  std::size_t cardinality = 0;
  CountTable table;  // rows: Y, columns: feature states
};

/// n joint draws of (Y, X1..X20), tallied per feature against Y.
std::vector<NbFeature> sample_nb_dataset(const NaiveBayesModel& model, std::int64_t n, RandomStream& stream);

struct ExperimentCurve {
  std::string x_name;
  std::vector<double> x_values;
  std::vector<MeasureKind> measures;
  /// fractions[m][i]: share of replicates at x_values[i] where measure m favoured the 2-state hypothesis.
  std::vector<std::vector<double>> fractions;
  /// Share of replicates where both naive p-values were exactly zero (empty without p_value).
  std::vector<double> p_value_underflow;
  /// Optional fixed parameter shared by every row, written as a leading column (e.g. n for a z-curve).
  std::string group_name;
  double group_value = 0.0;
  int replicates = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::pair<std::string, std::string>> config;

  [[nodiscard]] const std::vector<double>& fraction(MeasureKind kind) const;
};

struct DiscretizationConfig {
  std::vector<double> z_grid;
  std::vector<std::int64_t> n_values{25, 100, 500};
  int replicates = 100;
  std::vector<MeasureKind> measures{MeasureKind::mi_bc, MeasureKind::si, MeasureKind::ni, MeasureKind::p_value};
  std::uint64_t master_seed = 0;
  DofMode dof_mode = DofMode::nominal;
};

/// One curve per sample size, x = z.
std::vector<ExperimentCurve> run_discretization_experiment(const DiscretizationConfig& config);

struct FeatureSelectionConfig {
  double z = 0.1;
  std::vector<std::int64_t> n_values{32, 64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384};
  int replicates = 100;
  std::vector<MeasureKind> measures{MeasureKind::mi_bc, MeasureKind::si, MeasureKind::ni, MeasureKind::p_value};
  std::uint64_t master_seed = 0;
  DofMode dof_mode = DofMode::nominal;
};

/// x = n.
ExperimentCurve run_feature_selection_experiment(const FeatureSelectionConfig& config);

struct ConstraintCurve {
  std::vector<double> n_prime;
  std::vector<double> lhs;
  double rhs = 0.0;
};

ConstraintCurve ess_constraint_curve(const CountTable& table, const ProbTable& prior,
                                     std::span<const double> n_prime_grid, DofMode mode);

/// `# key: value` comment lines, a comma-separated header, then one row per x.
/// Several curves (one per sample size) share one header; their group value becomes a leading column.
void write_curves(std::ostream& out, std::span<const ExperimentCurve> curves);

void write_constraint_curve(std::ostream& out, const ConstraintCurve& curve);

}  // namespace fairdep
