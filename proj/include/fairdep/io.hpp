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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fairdep/tables.hpp"

// Text formats read and written by the command-line tool.
//
// Count table: rows of nonnegative integers separated by whitespace, commas,
// semicolons or tabs; blank lines and lines starting with '#' are skipped.
//
// Dataset: delimiter-separated; the first row names the variables and every
// other row is one sample of arbitrary string labels. Labels map to dense
// state indices in order of first appearance, per column.

namespace fairdep {

struct Dataset {
  std::vector<std::string> names;
  /// labels[c][s] is the label of state s in column c.
  std::vector<std::vector<std::string>> labels;
  /// states[c][row] is the state index of column c in that row.
  std::vector<std::vector<std::size_t>> states;

  [[nodiscard]] std::size_t rows() const noexcept { return states.empty() ? 0 : states.front().size(); }
  /// Throws InvalidInput for an unknown name.
  [[nodiscard]] std::size_t column(std::string_view name) const;
  /// Rows index states of column a, columns index states of column b.
  [[nodiscard]] CountTable pair_table(std::size_t a, std::size_t b) const;
};

enum class InputFormat { automatic, dataset, counts };

InputFormat parse_input_format(std::string_view name);

/// Throws InvalidInput with the offending line number on ragged or empty input.
Dataset read_dataset(std::istream& in, char delimiter = ',');
CountTable read_count_table(std::istream& in);
/// Nonnegative reals in the count-table layout (used for prior weights).
std::vector<std::vector<double>> read_real_matrix(std::istream& in);

/// Counts if the first data line is all nonnegative integers, dataset otherwise.
InputFormat detect_format(std::string_view text);

void write_count_table(std::ostream& out, const CountTable& table);

/// Shortest decimal that round-trips, so output is stable across runs.
std::string format_number(double value);

/// "0.1,0.2" or "start:stop:step" (inclusive, tolerant to rounding of the last point).
std::vector<double> parse_real_list(std::string_view text);
std::vector<std::int64_t> parse_int_list(std::string_view text);

}  // namespace fairdep
