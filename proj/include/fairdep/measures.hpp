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
#include <span>
#include <string_view>

#include "fairdep/tables.hpp"

// Dependence measures over a two-way count table. All logarithms are natural,
// so that 2*N*I follows the chi-square scale under independence.

namespace fairdep {

enum class Axis { a, b };

/// -sum p ln p with 0 ln 0 = 0. Throws InvalidInput unless p is a distribution.
double entropy(std::span<const double> probs);

/// Plug-in mutual information of the empirical distribution, in nats.
double mi_plugin(const CountTable& table);

/// mi_plugin - d/(2N). May be negative.
double mi_bias_corrected(const CountTable& table, DofMode mode);

/// sqrt(d) / (sqrt(2) N): spread of the plug-in estimate under independence.
double independence_std(const CountTable& table, DofMode mode);

/// (2 N I - d) / sqrt(2 d): distance of I from its null mean in null standard deviations.
double r_score(const CountTable& table, DofMode mode);

/// sqrt(2 N I) - sqrt(d), or sqrt(2 N I) - sqrt(d - 1/2) with `fisher_corrected`.
double standardized_information(const CountTable& table, DofMode mode, bool fisher_corrected = false);

/// I / ((H(A) + H(B)) / 2), in [0, 1].
double normalized_mi(const CountTable& table);

/// H(target | other) = H(A,B) - H(other).
double conditional_entropy(const CountTable& table, Axis target);

/// Chi-square survival at 2 N I with d degrees of freedom.
///
/// `naive` is 1 - CDF in double precision and hits exactly 0 once the survival
/// falls below ~1e-16. `log_p` comes from the log-space upper gamma and stays
/// finite far beyond that.
struct PValue {
  double naive = 1.0;
  double log_p = 0.0;
};

PValue p_value(const CountTable& table, DofMode mode);

/// Every measure for one pair.
struct DependenceReport {
  std::int64_t n = 0;
  std::int64_t dof = 0;
  DofMode dof_mode = DofMode::effective;
  double mi_plugin = 0.0;
  double mi_bc = 0.0;
  double indep_std = 0.0;
  double r_score = 0.0;
  double si = 0.0;
  double si_fisher = 0.0;
  double ni = 0.0;
  double p_naive = 1.0;
  double log_p = 0.0;
};

/// Throws ZeroDofError when the table has no degrees of freedom under `mode`.
DependenceReport report(const CountTable& table, DofMode mode);

enum class MeasureKind { mi_plugin, mi_bc, si, si_fisher, ni, p_value };

std::string_view to_string(MeasureKind kind) noexcept;
MeasureKind parse_measure_kind(std::string_view name);

/// False only for p_value, where smaller values mean stronger dependence.
constexpr bool higher_is_more_dependent(MeasureKind kind) noexcept { return kind != MeasureKind::p_value; }

/// Whether the measure needs d > 0.
constexpr bool requires_dof(MeasureKind kind) noexcept {
  return kind != MeasureKind::mi_plugin && kind != MeasureKind::ni;
}

}  // namespace fairdep
