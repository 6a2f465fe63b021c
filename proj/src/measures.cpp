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

#include "fairdep/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fairdep/error.hpp"
#include "fairdep/numerics.hpp"

namespace fairdep {
namespace {

std::int64_t positive_dof(const CountTable& table, DofMode mode) {
  const auto d = dof(table, mode);
  if (d <= 0)
    throw ZeroDofError("degrees of freedom are zero under " + std::string(to_string(mode)) + " mode");
  return d;
}

// x ln x with the 0 ln 0 = 0 convention, on counts.
double count_entropy(std::span<const std::int64_t> counts, double n) {
  double h = 0.0;
  for (const auto c : counts)
    if (c > 0) {
      const double p = static_cast<double>(c) / n;
      h -= p * std::log(p);
    }
  return h;
}

}  // namespace

double entropy(std::span<const double> probs) {
  double total = 0.0;
  double h = 0.0;
  for (const double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidInput("entropy: probabilities must be finite and nonnegative");
    total += p;
    if (p > 0.0) h -= p * std::log(p);
  }
  if (probs.empty() || std::fabs(total - 1.0) > 1e-9) throw InvalidInput("entropy: probabilities must sum to 1");
  return std::max(0.0, h);
}

double mi_plugin(const CountTable& table) {
  const auto n = static_cast<double>(table.total());
  const auto rs = table.row_sums();
  const auto cs = table.col_sums();
  double mi = 0.0;
  for (std::size_t a = 0; a < table.rows(); ++a)
    for (std::size_t b = 0; b < table.cols(); ++b) {
      const auto c = table.at(a, b);
      if (c == 0) continue;
      const double nab = static_cast<double>(c);
      mi += nab * std::log(nab * n / (static_cast<double>(rs[a]) * static_cast<double>(cs[b])));
    }
  // Rounding can leave a negative residue of order 1e-17 on independent tables.
  return std::max(0.0, mi / n);
}

double mi_bias_corrected(const CountTable& table, DofMode mode) {
  return mi_plugin(table) - static_cast<double>(dof(table, mode)) / (2.0 * static_cast<double>(table.total()));
}

double independence_std(const CountTable& table, DofMode mode) {
  const auto d = static_cast<double>(positive_dof(table, mode));
  return std::sqrt(d) / (std::sqrt(2.0) * static_cast<double>(table.total()));
}

double r_score(const CountTable& table, DofMode mode) {
  const auto d = static_cast<double>(positive_dof(table, mode));
  const double two_n_i = 2.0 * static_cast<double>(table.total()) * mi_plugin(table);
  return (two_n_i - d) / std::sqrt(2.0 * d);
}

double standardized_information(const CountTable& table, DofMode mode, bool fisher_corrected) {
  const auto d = static_cast<double>(positive_dof(table, mode));
  const double root = std::sqrt(2.0 * static_cast<double>(table.total()) * mi_plugin(table));
  return root - std::sqrt(fisher_corrected ? d - 0.5 : d);
}

double normalized_mi(const CountTable& table) {
  const auto n = static_cast<double>(table.total());
  const auto rs = table.row_sums();
  const auto cs = table.col_sums();
  const double width = 0.5 * (count_entropy(rs, n) + count_entropy(cs, n));
  if (!(width > 0.0)) throw DomainError("normalized_mi: both marginal entropies are zero");
  return std::clamp(mi_plugin(table) / width, 0.0, 1.0);
}

double conditional_entropy(const CountTable& table, Axis target) {
  const auto n = static_cast<double>(table.total());
  const double joint = count_entropy(table.cells(), n);
  const auto other = target == Axis::a ? table.col_sums() : table.row_sums();
  return std::max(0.0, joint - count_entropy(other, n));
}

PValue p_value(const CountTable& table, DofMode mode) {
  const auto d = static_cast<double>(positive_dof(table, mode));
  const double half_stat = static_cast<double>(table.total()) * mi_plugin(table);
  const auto robust = reg_gamma_upper(0.5 * d, half_stat);
  return {1.0 - reg_gamma_lower(0.5 * d, half_stat), robust.log_q};
}

DependenceReport report(const CountTable& table, DofMode mode) {
  const auto d = positive_dof(table, mode);
  const auto df = static_cast<double>(d);
  const auto n = static_cast<double>(table.total());

  DependenceReport r;
  r.n = table.total();
  r.dof = d;
  r.dof_mode = mode;
  r.mi_plugin = mi_plugin(table);
  r.mi_bc = r.mi_plugin - df / (2.0 * n);
  r.indep_std = std::sqrt(df) / (std::sqrt(2.0) * n);
  const double two_n_i = 2.0 * n * r.mi_plugin;
  r.r_score = (two_n_i - df) / std::sqrt(2.0 * df);
  r.si = std::sqrt(two_n_i) - std::sqrt(df);
  r.si_fisher = std::sqrt(two_n_i) - std::sqrt(df - 0.5);
  r.ni = normalized_mi(table);
  const auto pv = p_value(table, mode);
  r.p_naive = pv.naive;
  r.log_p = pv.log_p;
  return r;
}

std::string_view to_string(MeasureKind kind) noexcept {
  switch (kind) {
    case MeasureKind::mi_plugin: return "mi_plugin";
    case MeasureKind::mi_bc: return "mi_bc";
    case MeasureKind::si: return "si";
    case MeasureKind::si_fisher: return "si_fisher";
    case MeasureKind::ni: return "ni";
    case MeasureKind::p_value: return "p_value";
  }
  return "unknown";
}

MeasureKind parse_measure_kind(std::string_view name) {
  for (const auto kind : {MeasureKind::mi_plugin, MeasureKind::mi_bc, MeasureKind::si, MeasureKind::si_fisher,
                          MeasureKind::ni, MeasureKind::p_value})
    if (name == to_string(kind)) return kind;
  throw InvalidInput("unknown measure '" + std::string(name) +
                     "' (expected mi_plugin, mi_bc, si, si_fisher, ni or p_value)");
}

}  // namespace fairdep
