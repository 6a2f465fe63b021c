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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "fairdep/numerics.hpp"

namespace fairdep {

enum class DofMode { nominal, effective };

std::string_view to_string(DofMode mode) noexcept;
/// Parses "nominal" or "effective"; throws InvalidInput otherwise.
DofMode parse_dof_mode(std::string_view name);

/// Groups of state indices; every state of an axis appears in exactly one group.
using Partition = std::vector<std::vector<std::size_t>>;

/// Two-way contingency table of nonnegative counts, row-major, immutable.
///
/// Rows index the states of A, columns the states of B. Both axes have at
/// least two states and at least one cell is positive. Rows or columns whose
/// count is zero are allowed; they are what the effective dof discounts.
class CountTable {
 public:
  static CountTable from_counts(const std::vector<std::vector<std::int64_t>>& counts);
  static CountTable from_samples(std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                 std::size_t card_a, std::size_t card_b);
  /// Row-major flat cells; used by samplers and merging.
  static CountTable from_flat(std::size_t rows, std::size_t cols, std::vector<std::int64_t> cells);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::int64_t total() const noexcept { return total_; }
  [[nodiscard]] std::int64_t at(std::size_t a, std::size_t b) const { return cells_[a * cols_ + b]; }
  [[nodiscard]] std::span<const std::int64_t> cells() const noexcept { return cells_; }

  [[nodiscard]] std::vector<std::int64_t> row_sums() const;
  [[nodiscard]] std::vector<std::int64_t> col_sums() const;
  [[nodiscard]] std::vector<std::vector<std::int64_t>> to_nested() const;

  /// Same shape, counts multiplied by `factor` (>= 1).
  [[nodiscard]] CountTable scaled(std::int64_t factor) const;
  /// Rows and columns swapped.
  [[nodiscard]] CountTable transposed() const;

  friend bool operator==(const CountTable&, const CountTable&) = default;

 private:
  CountTable(std::size_t rows, std::size_t cols, std::vector<std::int64_t> cells);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> cells_;
  std::int64_t total_ = 0;
};

/// Joint distribution over two discrete variables, row-major, immutable.
class ProbTable {
 public:
  /// Entries must be finite, >= 0 and sum to 1 within 1e-12.
  static ProbTable from_probs(const std::vector<std::vector<double>>& probs);
  static ProbTable from_flat(std::size_t rows, std::size_t cols, std::vector<double> cells);
  static ProbTable uniform(std::size_t rows, std::size_t cols);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] double at(std::size_t a, std::size_t b) const { return cells_[a * cols_ + b]; }
  [[nodiscard]] std::span<const double> cells() const noexcept { return cells_; }
  [[nodiscard]] std::vector<std::vector<double>> to_nested() const;

 private:
  ProbTable(std::size_t rows, std::size_t cols, std::vector<double> cells);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> cells_;
};

/// p(a,b) = N_ab / N.
ProbTable empirical_joint(const CountTable& table);

/// Row sums (distribution of A) and column sums (distribution of B).
std::pair<std::vector<double>, std::vector<double>> marginals(const ProbTable& probs);

/// Nominal: (|A|-1)(|B|-1).
/// Effective: max(0, nonzero cells - nonzero rows - nonzero columns + 1).
std::int64_t dof(const CountTable& table, DofMode mode);

/// Sums the cells of each (group_a, group_b) block. Each partition must cover
/// its axis exactly once and have at least two groups.
CountTable merge_states(const CountTable& table, const Partition& part_a, const Partition& part_b);
ProbTable merge_states(const ProbTable& probs, const Partition& part_a, const Partition& part_b);

/// n i.i.d. draws from `probs`, one uniform draw per sample.
CountTable sample_table(const ProbTable& probs, std::int64_t n, RandomStream& stream);

}  // namespace fairdep
