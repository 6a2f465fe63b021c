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

#include "fairdep/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "fairdep/error.hpp"

namespace fairdep {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool is_skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  const auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == ';' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view token, T& value) {
  const auto* end = token.data() + token.size();
  const auto res = std::from_chars(token.data(), end, value);
  return res.ec == std::errc() && res.ptr == end;
}

std::string line_ref(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

template <typename T, typename Check>
std::vector<std::vector<T>> read_matrix(std::istream& in, const char* what, Check check) {
  std::vector<std::vector<T>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    std::vector<T> row;
    for (const auto token : split_tokens(line)) {
      T value{};
      if (!parse_number(token, value) || !check(value))
        throw InvalidInput(line_ref(line_no) + "'" + std::string(token) + "' is not a " + what);
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw InvalidInput(line_ref(line_no) + "expected " + std::to_string(rows.front().size()) + " entries, found " +
                         std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInput("no table rows found");
  return rows;
}

}  // namespace

std::size_t Dataset::column(std::string_view name) const {
  const auto it = std::ranges::find(names, name);
  if (it == names.end()) throw InvalidInput("unknown column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names.begin());
}

CountTable Dataset::pair_table(std::size_t a, std::size_t b) const {
  if (a >= names.size() || b >= names.size()) throw InvalidInput("column index out of range");
  if (labels[a].size() < 2 || labels[b].size() < 2)
    throw DomainError("column '" + names[labels[a].size() < 2 ? a : b] + "' takes a single value");
  std::vector<std::pair<std::size_t, std::size_t>> pairs(rows());
  for (std::size_t r = 0; r < rows(); ++r) pairs[r] = {states[a][r], states[b][r]};
  return CountTable::from_samples(pairs, labels[a].size(), labels[b].size());
}

InputFormat parse_input_format(std::string_view name) {
  if (name == "auto") return InputFormat::automatic;
  if (name == "dataset") return InputFormat::dataset;
  if (name == "counts") return InputFormat::counts;
  throw InvalidInput("unknown input format '" + std::string(name) + "' (expected auto, dataset or counts)");
}

Dataset read_dataset(std::istream& in, char delimiter) {
  Dataset data;
  std::vector<std::unordered_map<std::string, std::size_t>> index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    const auto fields = split_fields(line, delimiter);
    if (data.names.empty()) {
      for (const auto f : fields) {
        if (f.empty()) throw InvalidInput(line_ref(line_no) + "empty column name");
        if (std::ranges::find(data.names, f) != data.names.end())
          throw InvalidInput(line_ref(line_no) + "duplicate column name '" + std::string(f) + "'");
        data.names.emplace_back(f);
      }
      if (data.names.size() < 2) throw InvalidInput(line_ref(line_no) + "a dataset needs at least two columns");
      data.labels.resize(data.names.size());
      data.states.resize(data.names.size());
      index.resize(data.names.size());
      continue;
    }
    if (fields.size() != data.names.size())
      throw InvalidInput(line_ref(line_no) + "expected " + std::to_string(data.names.size()) + " fields, found " +
                         std::to_string(fields.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string label(fields[c]);
      const auto [it, inserted] = index[c].try_emplace(label, data.labels[c].size());
      if (inserted) data.labels[c].push_back(label);
      data.states[c].push_back(it->second);
    }
  }
  if (data.names.empty()) throw InvalidInput("dataset is empty");
  if (data.rows() == 0) throw InvalidInput("dataset has a header but no samples");
  return data;
}

CountTable read_count_table(std::istream& in) {
  return CountTable::from_counts(
      read_matrix<std::int64_t>(in, "nonnegative integer", [](std::int64_t v) { return v >= 0; }));
}

std::vector<std::vector<double>> read_real_matrix(std::istream& in) {
  return read_matrix<double>(in, "nonnegative number", [](double v) { return v >= 0.0 && std::isfinite(v); });
}

InputFormat detect_format(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = text.find('\n', pos);
    const auto line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() : end + 1;
    if (is_skippable(line)) continue;
    for (const auto token : split_tokens(line)) {
      std::int64_t v = 0;
      if (!parse_number(token, v) || v < 0) return InputFormat::dataset;
    }
    return InputFormat::counts;
  }
  return InputFormat::counts;
}

void write_count_table(std::ostream& out, const CountTable& table) {
  for (std::size_t a = 0; a < table.rows(); ++a) {
    for (std::size_t b = 0; b < table.cols(); ++b) out << (b ? " " : "") << table.at(a, b);
    out << '\n';
  }
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_real_list(std::string_view text) {
  const auto bad = [&] { return InvalidInput("cannot parse number list '" + std::string(text) + "'"); };
  const auto t = trim(text);
  if (t.find(':') != std::string_view::npos) {
    const auto parts = split_fields(t, ':');
    double start = 0, stop = 0, step = 0;
    if (parts.size() != 3 || !parse_number(parts[0], start) || !parse_number(parts[1], stop) ||
        !parse_number(parts[2], step) || !(step > 0.0) || stop < start)
      throw bad();
    std::vector<double> values;
    const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9));
    for (std::int64_t i = 0; i <= count; ++i) values.push_back(start + static_cast<double>(i) * step);
    return values;
  }
  std::vector<double> values;
  for (const auto token : split_tokens(t)) {
    double v = 0;
    if (!parse_number(token, v) || !std::isfinite(v)) throw bad();
    values.push_back(v);
  }
  if (values.empty()) throw bad();
  return values;
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> values;
  for (const auto token : split_tokens(text)) {
    std::int64_t v = 0;
    if (!parse_number(token, v)) throw InvalidInput("cannot parse integer list '" + std::string(text) + "'");
    values.push_back(v);
  }
  if (values.empty()) throw InvalidInput("integer list is empty");
  return values;
}

}  // namespace fairdep
