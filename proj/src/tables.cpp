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

#include "fairdep/tables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fairdep/error.hpp"

namespace fairdep {
namespace {

void check_shape(std::size_t rows, std::size_t cols) {
  if (rows < 2 || cols < 2)
    throw InvalidInput("table must be at least 2x2 (got " + std::to_string(rows) + "x" +
                       std::to_string(cols) + ")");
}

template <typename T>
std::size_t rectangular_width(const std::vector<std::vector<T>>& nested) {
  if (nested.empty()) return 0;
  const std::size_t width = nested.front().size();
  for (const auto& row : nested)
    if (row.size() != width) throw InvalidInput("table rows have different lengths");
  return width;
}

// Maps each state to its group index; validates coverage.
std::vector<std::size_t> group_of(const Partition& part, std::size_t states, char axis) {
  const std::string name(1, axis);
  if (part.size() < 2) throw InvalidInput("partition of " + name + " needs at least two groups");
  std::vector<std::size_t> group(states, states);
  for (std::size_t g = 0; g < part.size(); ++g) {
    if (part[g].empty()) throw InvalidInput("partition of " + name + " has an empty group");
    for (const std::size_t s : part[g]) {
      if (s >= states) throw InvalidInput("partition of " + name + " names state " + std::to_string(s) + " out of range");
      if (group[s] != states) throw InvalidInput("partition of " + name + " lists state " + std::to_string(s) + " twice");
      group[s] = g;
    }
  }
  for (std::size_t s = 0; s < states; ++s)
    if (group[s] == states) throw InvalidInput("partition of " + name + " misses state " + std::to_string(s));
  return group;
}

}  // namespace

std::string_view to_string(DofMode mode) noexcept {
  return mode == DofMode::nominal ? "nominal" : "effective";
}

DofMode parse_dof_mode(std::string_view name) {
  if (name == "nominal") return DofMode::nominal;
  if (name == "effective") return DofMode::effective;
  throw InvalidInput("unknown dof mode '" + std::string(name) + "' (expected nominal or effective)");
}

CountTable::CountTable(std::size_t rows, std::size_t cols, std::vector<std::int64_t> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  check_shape(rows_, cols_);
  if (cells_.size() != rows_ * cols_) throw InvalidInput("cell count does not match table shape");
  for (const auto c : cells_) {
    if (c < 0) throw InvalidInput("counts must be nonnegative");
    total_ += c;
  }
  if (total_ == 0) throw InvalidInput("table has no observations (all cells are zero)");
}

CountTable CountTable::from_flat(std::size_t rows, std::size_t cols, std::vector<std::int64_t> cells) {
  return CountTable(rows, cols, std::move(cells));
}

CountTable CountTable::from_counts(const std::vector<std::vector<std::int64_t>>& counts) {
  const std::size_t cols = rectangular_width(counts);
  std::vector<std::int64_t> cells;
  cells.reserve(counts.size() * cols);
  for (const auto& row : counts) cells.insert(cells.end(), row.begin(), row.end());
  return CountTable(counts.size(), cols, std::move(cells));
}

CountTable CountTable::from_samples(std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                    std::size_t card_a, std::size_t card_b) {
  check_shape(card_a, card_b);
  std::vector<std::int64_t> cells(card_a * card_b, 0);
  for (const auto& [a, b] : pairs) {
    if (a >= card_a || b >= card_b)
      throw InvalidInput("sample (" + std::to_string(a) + "," + std::to_string(b) + ") is out of range");
    ++cells[a * card_b + b];
  }
  return CountTable(card_a, card_b, std::move(cells));
}

std::vector<std::int64_t> CountTable::row_sums() const {
  std::vector<std::int64_t> sums(rows_, 0);
  for (std::size_t a = 0; a < rows_; ++a)
    for (std::size_t b = 0; b < cols_; ++b) sums[a] += at(a, b);
  return sums;
}

std::vector<std::int64_t> CountTable::col_sums() const {
  std::vector<std::int64_t> sums(cols_, 0);
  for (std::size_t a = 0; a < rows_; ++a)
    for (std::size_t b = 0; b < cols_; ++b) sums[b] += at(a, b);
  return sums;
}

std::vector<std::vector<std::int64_t>> CountTable::to_nested() const {
  std::vector<std::vector<std::int64_t>> nested(rows_);
  for (std::size_t a = 0; a < rows_; ++a)
    nested[a].assign(cells_.begin() + static_cast<std::ptrdiff_t>(a * cols_),
                     cells_.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols_));
  return nested;
}

CountTable CountTable::scaled(std::int64_t factor) const {
  if (factor < 1) throw InvalidInput("scale factor must be >= 1");
  std::vector<std::int64_t> cells = cells_;
  for (auto& c : cells) c *= factor;
  return CountTable(rows_, cols_, std::move(cells));
}

CountTable CountTable::transposed() const {
  std::vector<std::int64_t> cells(cells_.size());
  for (std::size_t a = 0; a < rows_; ++a)
    for (std::size_t b = 0; b < cols_; ++b) cells[b * rows_ + a] = at(a, b);
  return CountTable(cols_, rows_, std::move(cells));
}

ProbTable::ProbTable(std::size_t rows, std::size_t cols, std::vector<double> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  check_shape(rows_, cols_);
  if (cells_.size() != rows_ * cols_) throw InvalidInput("cell count does not match table shape");
  double total = 0.0;
  for (const double p : cells_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidInput("probabilities must be finite and nonnegative");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw InvalidInput("probabilities must sum to 1 (got " + std::to_string(total) + ")");
}

ProbTable ProbTable::from_flat(std::size_t rows, std::size_t cols, std::vector<double> cells) {
  return ProbTable(rows, cols, std::move(cells));
}

ProbTable ProbTable::from_probs(const std::vector<std::vector<double>>& probs) {
  const std::size_t cols = rectangular_width(probs);
  std::vector<double> cells;
  cells.reserve(probs.size() * cols);
  for (const auto& row : probs) cells.insert(cells.end(), row.begin(), row.end());
  return ProbTable(probs.size(), cols, std::move(cells));
}

ProbTable ProbTable::uniform(std::size_t rows, std::size_t cols) {
  check_shape(rows, cols);
  return ProbTable(rows, cols, std::vector<double>(rows * cols, 1.0 / static_cast<double>(rows * cols)));
}

std::vector<std::vector<double>> ProbTable::to_nested() const {
  std::vector<std::vector<double>> nested(rows_);
  for (std::size_t a = 0; a < rows_; ++a)
    nested[a].assign(cells_.begin() + static_cast<std::ptrdiff_t>(a * cols_),
                     cells_.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols_));
  return nested;
}

ProbTable empirical_joint(const CountTable& table) {
  const auto n = static_cast<double>(table.total());
  std::vector<double> cells;
  cells.reserve(table.cells().size());
  for (const auto c : table.cells()) cells.push_back(static_cast<double>(c) / n);
  return ProbTable::from_flat(table.rows(), table.cols(), std::move(cells));
}

std::pair<std::vector<double>, std::vector<double>> marginals(const ProbTable& probs) {
  std::vector<double> pa(probs.rows(), 0.0);
  std::vector<double> pb(probs.cols(), 0.0);
  for (std::size_t a = 0; a < probs.rows(); ++a)
    for (std::size_t b = 0; b < probs.cols(); ++b) {
      pa[a] += probs.at(a, b);
      pb[b] += probs.at(a, b);
    }
  return {std::move(pa), std::move(pb)};
}

std::int64_t dof(const CountTable& table, DofMode mode) {
  const auto rows = static_cast<std::int64_t>(table.rows());
  const auto cols = static_cast<std::int64_t>(table.cols());
  if (mode == DofMode::nominal) return (rows - 1) * (cols - 1);

  const auto positive = [](std::int64_t c) { return c > 0; };
  const auto nonzero_cells = std::ranges::count_if(table.cells(), positive);
  const auto rs = table.row_sums();
  const auto cs = table.col_sums();
  const auto nonzero_rows = std::ranges::count_if(rs, positive);
  const auto nonzero_cols = std::ranges::count_if(cs, positive);
  return std::max<std::int64_t>(0, nonzero_cells - nonzero_rows - nonzero_cols + 1);
}

CountTable merge_states(const CountTable& table, const Partition& part_a, const Partition& part_b) {
  const auto ga = group_of(part_a, table.rows(), 'A');
  const auto gb = group_of(part_b, table.cols(), 'B');
  std::vector<std::int64_t> cells(part_a.size() * part_b.size(), 0);
  for (std::size_t a = 0; a < table.rows(); ++a)
    for (std::size_t b = 0; b < table.cols(); ++b) cells[ga[a] * part_b.size() + gb[b]] += table.at(a, b);
  return CountTable::from_flat(part_a.size(), part_b.size(), std::move(cells));
}

ProbTable merge_states(const ProbTable& probs, const Partition& part_a, const Partition& part_b) {
  const auto ga = group_of(part_a, probs.rows(), 'A');
  const auto gb = group_of(part_b, probs.cols(), 'B');
  std::vector<double> cells(part_a.size() * part_b.size(), 0.0);
  for (std::size_t a = 0; a < probs.rows(); ++a)
    for (std::size_t b = 0; b < probs.cols(); ++b) cells[ga[a] * part_b.size() + gb[b]] += probs.at(a, b);
  return ProbTable::from_flat(part_a.size(), part_b.size(), std::move(cells));
}

CountTable sample_table(const ProbTable& probs, std::int64_t n, RandomStream& stream) {
  if (n < 1) throw InvalidInput("sample size must be positive");
  const CategoricalSampler sampler(probs.cells());
  std::vector<std::int64_t> cells(probs.cells().size(), 0);
  for (std::int64_t i = 0; i < n; ++i) ++cells[sampler(stream)];
  return CountTable::from_flat(probs.rows(), probs.cols(), std::move(cells));
}

}  // namespace fairdep
