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
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairdep/measures.hpp"
#include "fairdep/tables.hpp"

namespace fairdep {

struct ScoredCandidate {
  std::string id;
  /// Measure value. For p_value this is log_p, since the naive value cannot order past underflow.
  double score = 0.0;
  /// Orientation-normalized: higher always means more dependent.
  double key = 0.0;
  std::int64_t dof = 0;
  std::int64_t n = 0;
  /// Naive p-value, reported for p_value candidates only (NaN otherwise).
  double p_naive = 0.0;
};

/// Candidate sorted by key (descending), then dof (ascending), then id.
struct Ranking {
  static constexpr std::string_view tie_policy = "key descending, then smaller dof, then id ascending";
  std::vector<ScoredCandidate> order;
};

/// Failure to score one candidate; carries the candidate's id.
class CandidateError : public std::runtime_error {
 public:
  CandidateError(std::string id, const std::string& reason)
      : std::runtime_error("candidate '" + id + "': " + reason), id_(std::move(id)) {}
  [[nodiscard]] const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

using NamedTable = std::pair<std::string, CountTable>;

ScoredCandidate score_candidate(const std::string& id, const CountTable& table, MeasureKind kind, DofMode mode);

std::vector<ScoredCandidate> score_candidates(std::span<const NamedTable> tables, MeasureKind kind, DofMode mode);

Ranking rank(std::vector<ScoredCandidate> candidates);

/// c = inv_Phi(1 - alpha) / sqrt(2): SI above c is significant at level alpha.
double si_threshold(double alpha);

bool is_notable(double si, double alpha);

enum class Winner { fine, coarse };

std::string_view to_string(Winner winner) noexcept;

/// Measures the fine table and its merge; the larger key wins, exact ties go to coarse.
Winner compare_discretizations(const CountTable& fine, const Partition& part_a, const Partition& part_b,
                               MeasureKind kind, DofMode mode);

/// Id of the top-ranked feature. Throws InvalidInput on an empty list.
std::string select_best_feature(std::span<const NamedTable> features, MeasureKind kind, DofMode mode);

}  // namespace fairdep
