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

#include "fairdep/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "fairdep/error.hpp"
#include "fairdep/numerics.hpp"

namespace fairdep {

ScoredCandidate score_candidate(const std::string& id, const CountTable& table, MeasureKind kind, DofMode mode) {
  ScoredCandidate c;
  c.id = id;
  c.n = table.total();
  c.dof = dof(table, mode);
  c.p_naive = std::numeric_limits<double>::quiet_NaN();
  try {
    switch (kind) {
      case MeasureKind::mi_plugin: c.score = mi_plugin(table); break;
      case MeasureKind::mi_bc: c.score = mi_bias_corrected(table, mode); break;
      case MeasureKind::si: c.score = standardized_information(table, mode, false); break;
      case MeasureKind::si_fisher: c.score = standardized_information(table, mode, true); break;
      case MeasureKind::ni: c.score = normalized_mi(table); break;
      case MeasureKind::p_value: {
        const auto pv = p_value(table, mode);
        c.score = pv.log_p;
        c.p_naive = pv.naive;
        break;
      }
    }
  } catch (const std::exception& e) {
    throw CandidateError(id, e.what());
  }
  // mi_bc is only meaningful with d > 0 as well.
  if (requires_dof(kind) && c.dof <= 0) throw CandidateError(id, "degrees of freedom are zero");
  c.key = higher_is_more_dependent(kind) ? c.score : -c.score;
  return c;
}

std::vector<ScoredCandidate> score_candidates(std::span<const NamedTable> tables, MeasureKind kind, DofMode mode) {
  std::vector<ScoredCandidate> scored;
  scored.reserve(tables.size());
  for (const auto& [id, table] : tables) scored.push_back(score_candidate(id, table, kind, mode));
  return scored;
}

Ranking rank(std::vector<ScoredCandidate> candidates) {
  std::ranges::stable_sort(candidates, [](const ScoredCandidate& x, const ScoredCandidate& y) {
    return std::tie(y.key, x.dof, x.id) < std::tie(x.key, y.dof, y.id);
  });
  return {std::move(candidates)};
}

double si_threshold(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  return inv_std_normal_cdf(1.0 - alpha) / std::sqrt(2.0);
}

bool is_notable(double si, double alpha) { return si > si_threshold(alpha); }

std::string_view to_string(Winner winner) noexcept { return winner == Winner::fine ? "fine" : "coarse"; }

Winner compare_discretizations(const CountTable& fine, const Partition& part_a, const Partition& part_b,
                               MeasureKind kind, DofMode mode) {
  const CountTable coarse = merge_states(fine, part_a, part_b);
  const auto fine_key = score_candidate("fine", fine, kind, mode).key;
  const auto coarse_key = score_candidate("coarse", coarse, kind, mode).key;
  return fine_key > coarse_key ? Winner::fine : Winner::coarse;
}

std::string select_best_feature(std::span<const NamedTable> features, MeasureKind kind, DofMode mode) {
  if (features.empty()) throw InvalidInput("select_best_feature needs at least one feature");
  return rank(score_candidates(features, kind, mode)).order.front().id;
}

}  // namespace fairdep
