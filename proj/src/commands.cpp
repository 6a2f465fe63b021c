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

#include "fairdep/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string_view>
#include <vector>

#include "fairdep/error.hpp"
#include "fairdep/ess.hpp"
#include "fairdep/experiments.hpp"
#include "fairdep/io.hpp"
#include "fairdep/measures.hpp"
#include "fairdep/ranking.hpp"

namespace fairdep {
namespace {

// Runs a command body against a buffer; the buffer reaches `out` only on success.
int guarded(std::ostream& out, std::ostream& err, const std::function<void(std::ostream&)>& body) {
  std::ostringstream buffer;
  try {
    body(buffer);
  } catch (const NoRootError& e) {
    err << "no-root: " << e.what() << '\n';
    return kExitNoRoot;
  } catch (const ConvergenceError& e) {
    err << "non-convergence: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const CandidateError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  out << buffer.str();
  return kExitOk;
}

std::string read_text(const std::string& path) {
  if (path.empty()) throw InvalidInput("an input path is required");
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InvalidInput("cannot write '" + path + "'");
  file << text;
  if (!file.flush()) throw InvalidInput("cannot write '" + path + "'");
}

std::vector<std::string> split_names(std::string_view text) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(',', start);
    names.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return names;
}

std::string label_line(const Dataset& data, std::size_t column) {
  std::string line = "# labels " + data.names[column] + ":";
  for (std::size_t s = 0; s < data.labels[column].size(); ++s)
    line += " " + data.labels[column][s] + "=" + std::to_string(s);
  return line;
}

struct LoadedTable {
  CountTable table;
  std::vector<std::string> comments;
};

LoadedTable load_table(const TableSource& source) {
  const auto text = read_text(source.input);
  auto format = parse_input_format(source.format);
  if (format == InputFormat::automatic) format = detect_format(text);
  std::istringstream in(text);
  if (format == InputFormat::counts) {
    if (!source.pair.empty()) throw InvalidInput("--pair applies to dataset input only");
    return {read_count_table(in), {"# input: " + source.input + " (counts)"}};
  }
  const auto data = read_dataset(in, source.delimiter);
  std::size_t a = 0, b = 1;
  if (!source.pair.empty()) {
    const auto names = split_names(source.pair);
    if (names.size() != 2) throw InvalidInput("--pair expects two column names as A,B");
    a = data.column(names[0]);
    b = data.column(names[1]);
    if (a == b) throw InvalidInput("--pair names the same column twice");
  } else if (data.names.size() != 2) {
    throw InvalidInput("dataset has " + std::to_string(data.names.size()) + " columns; choose two with --pair A,B");
  }
  return {data.pair_table(a, b),
          {"# input: " + source.input + " (dataset, " + std::to_string(data.rows()) + " rows)",
           "# pair: " + data.names[a] + "," + data.names[b], label_line(data, a), label_line(data, b)}};
}

ProbTable load_prior(const std::string& prior, const CountTable& table) {
  if (prior == "uniform") return ProbTable::uniform(table.rows(), table.cols());
  std::istringstream in(read_text(prior));
  auto weights = read_real_matrix(in);
  if (weights.size() != table.rows() || weights.front().size() != table.cols())
    throw InvalidInput("prior is " + std::to_string(weights.size()) + "x" + std::to_string(weights.front().size()) +
                       " but the table is " + std::to_string(table.rows()) + "x" + std::to_string(table.cols()));
  double total = 0.0;
  for (const auto& row : weights)
    for (const double w : row) total += w;
  if (!(total > 0.0)) throw InvalidInput("prior weights sum to zero");
  for (auto& row : weights)
    for (double& w : row) w /= total;
  return ProbTable::from_probs(weights);
}

void put(std::ostream& os, std::string_view key, double value) { os << key << '=' << format_number(value) << '\n'; }
void put(std::ostream& os, std::string_view key, std::int64_t value) { os << key << '=' << value << '\n'; }
void put(std::ostream& os, std::string_view key, std::string_view value) { os << key << '=' << value << '\n'; }

void write_comments(std::ostream& os, const std::vector<std::string>& comments) {
  for (const auto& c : comments) os << c << '\n';
}

std::vector<MeasureKind> parse_measures(std::string_view text) {
  std::vector<MeasureKind> kinds;
  for (const auto& name : split_names(text)) kinds.push_back(parse_measure_kind(name));
  return kinds;
}

std::vector<double> default_curve_grid(double n_prime) {
  std::vector<double> grid;
  const double top = std::isfinite(n_prime) && n_prime > 0.0 ? 4.0 * n_prime : 100.0;
  for (int i = 0; i <= 100; ++i) grid.push_back(top * i / 100.0);
  return grid;
}

void reject_if(bool present, std::string_view flag, std::string_view name) {
  if (present) throw InvalidInput(std::string(flag) + " does not apply to experiment " + std::string(name));
}

void summarize(std::ostream& os, const ExperimentCurve& curve) {
  const auto prefix = curve.group_name.empty() ? std::string() : curve.group_name + "=" + format_number(curve.group_value) + " ";
  for (std::size_t m = 0; m < curve.measures.size(); ++m) {
    os << prefix << to_string(curve.measures[m]) << ": " << curve.x_name << '=' << format_number(curve.x_values.front())
       << " -> " << format_number(curve.fractions[m].front()) << ", " << curve.x_name << '='
       << format_number(curve.x_values.back()) << " -> " << format_number(curve.fractions[m].back()) << '\n';
  }
}

}  // namespace

int cmd_measure(const MeasureOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&](std::ostream& os) {
    const auto mode = parse_dof_mode(options.dof);
    const auto loaded = load_table(options.source);
    write_comments(os, loaded.comments);
    const auto& table = loaded.table;
    const auto d = dof(table, mode);
    if (d > 0) {
      const auto r = report(table, mode);
      put(os, "n", r.n);
      put(os, "dof", r.dof);
      put(os, "dof_mode", to_string(r.dof_mode));
      put(os, "mi_plugin", r.mi_plugin);
      put(os, "mi_bc", r.mi_bc);
      put(os, "indep_std", r.indep_std);
      put(os, "r_score", r.r_score);
      put(os, "si", r.si);
      put(os, "si_fisher", r.si_fisher);
      put(os, "ni", r.ni);
      put(os, "p_naive", r.p_naive);
      put(os, "log_p", r.log_p);
      return;
    }
    os << "# degrees of freedom are zero; dof-dependent fields are undefined\n";
    put(os, "n", table.total());
    put(os, "dof", d);
    put(os, "dof_mode", to_string(mode));
    put(os, "mi_plugin", mi_plugin(table));
    put(os, "mi_bc", mi_bias_corrected(table, mode));
    put(os, "indep_std", "undefined");
    put(os, "r_score", "undefined");
    put(os, "si", "undefined");
    put(os, "si_fisher", "undefined");
    try {
      put(os, "ni", normalized_mi(table));
    } catch (const DomainError&) {
      put(os, "ni", "undefined");
    }
    put(os, "p_naive", "undefined");
    put(os, "log_p", "undefined");
  });
}

int cmd_rank(const RankOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&](std::ostream& os) {
    const auto mode = parse_dof_mode(options.dof);
    const auto kind = parse_measure_kind(options.measure);
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
    std::istringstream in(read_text(options.input));
    const auto data = read_dataset(in, options.delimiter);
    if (options.class_column.empty()) throw InvalidInput("a class column is required");
    const auto y = data.column(options.class_column);

    if (data.labels[y].size() < 2) throw DomainError("class column '" + data.names[y] + "' takes a single value");

    std::vector<NamedTable> features;
    for (std::size_t c = 0; c < data.names.size(); ++c) {
      if (c == y) continue;
      try {
        features.emplace_back(data.names[c], data.pair_table(y, c));
      } catch (const std::exception& e) {
        throw CandidateError(data.names[c], e.what());
      }
    }
    const auto ranking = rank(score_candidates(features, kind, mode));

    const bool with_notable = kind == MeasureKind::si;
    os << "# input: " << options.input << " (" << data.rows() << " rows)\n";
    os << "# class: " << data.names[y] << '\n';
    os << "# measure: " << to_string(kind) << (kind == MeasureKind::p_value ? " (score is log_p, ascending)" : "")
       << '\n';
    os << "# dof_mode: " << to_string(mode) << '\n';
    if (with_notable)
      os << "# alpha: " << format_number(options.alpha) << " (si threshold " << format_number(si_threshold(options.alpha))
         << ")\n";
    os << "# ties: " << Ranking::tie_policy << '\n';
    os << "rank,id,score,dof" << (with_notable ? ",notable" : "") << '\n';
    std::size_t position = 0;
    for (const auto& c : ranking.order) {
      os << ++position << ',' << c.id << ',' << format_number(c.score) << ',' << c.dof;
      if (with_notable) os << ',' << (is_notable(c.score, options.alpha) ? "true" : "false");
      os << '\n';
    }
  });
}

int cmd_ess(const EssOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&](std::ostream& os) {
    const auto mode = parse_dof_mode(options.dof);
    if (!(options.tol > 0.0)) throw InvalidInput("tolerance must be positive");
    const auto loaded = load_table(options.source);
    const auto prior = load_prior(options.prior, loaded.table);
    const auto result = solve_ess(loaded.table, prior, mode, options.tol);

    write_comments(os, loaded.comments);
    os << "# prior: " << options.prior << '\n';
    if (std::isnan(result.n_prime_approx)) os << "# the closed-form approximation has no positive value\n";
    put(os, "n", loaded.table.total());
    put(os, "dof", dof(loaded.table, mode));
    put(os, "dof_mode", to_string(mode));
    put(os, "n_prime_exact", result.n_prime_exact);
    put(os, "n_prime_approx", result.n_prime_approx);
    put(os, "rhs", result.rhs);
    put(os, "residual", result.residual);
    put(os, "used_safe_joint", result.used_safe_joint ? "true" : "false");
    put(os, "iterations", static_cast<std::int64_t>(result.iterations));
    if (options.curve) {
      const auto grid =
          options.curve_grid.empty() ? default_curve_grid(result.n_prime_exact) : parse_real_list(options.curve_grid);
      os << '\n';
      write_constraint_curve(os, ess_constraint_curve(loaded.table, prior, grid, mode));
    }
  });
}

int cmd_experiment(const ExperimentOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&](std::ostream& os) {
    const auto& name = options.name;
    const auto mode = parse_dof_mode(options.dof);
    std::ostringstream curve_text;
    std::ostringstream summary;

    if (name == "fig2") {
      reject_if(options.z.has_value(), "--z", name);
      reject_if(!options.source.input.empty(), "--input", name);
      reject_if(!options.curve_grid.empty(), "--grid", name);
      DiscretizationConfig config;
      config.z_grid = parse_real_list(options.z_grid.empty() ? "0:0.125:0.005" : options.z_grid);
      if (!options.n_values.empty()) config.n_values = parse_int_list(options.n_values);
      if (options.replicates) config.replicates = *options.replicates;
      if (!options.measures.empty()) config.measures = parse_measures(options.measures);
      config.master_seed = options.seed;
      config.dof_mode = mode;
      const auto curves = run_discretization_experiment(config);
      write_curves(curve_text, curves);
      summary << "fig2: fraction of replicates favoring 2 states, " << config.replicates << " replicates, seed "
              << options.seed << '\n';
      for (const auto& c : curves) summarize(summary, c);
    } else if (name == "fig3") {
      reject_if(!options.z_grid.empty(), "--z-grid", name);
      reject_if(!options.source.input.empty(), "--input", name);
      reject_if(!options.curve_grid.empty(), "--grid", name);
      FeatureSelectionConfig config;
      if (options.z) config.z = *options.z;
      if (!options.n_values.empty()) config.n_values = parse_int_list(options.n_values);
      if (options.replicates) config.replicates = *options.replicates;
      if (!options.measures.empty()) config.measures = parse_measures(options.measures);
      config.master_seed = options.seed;
      config.dof_mode = mode;
      const auto curve = run_feature_selection_experiment(config);
      write_curves(curve_text, std::span(&curve, 1));
      summary << "fig3: fraction of replicates selecting a 2-state feature, z=" << format_number(config.z) << ", "
              << config.replicates << " replicates, seed " << options.seed << '\n';
      summarize(summary, curve);
    } else if (name == "ess-curve") {
      reject_if(options.z.has_value(), "--z", name);
      reject_if(!options.z_grid.empty(), "--z-grid", name);
      reject_if(!options.n_values.empty(), "--n", name);
      reject_if(options.replicates.has_value(), "--replicates", name);
      reject_if(!options.measures.empty(), "--measures", name);
      const auto loaded = load_table(options.source);
      const auto prior = load_prior(options.prior, loaded.table);
      std::vector<double> grid;
      double root = std::nan("");
      try {
        root = solve_ess(loaded.table, prior, mode).n_prime_exact;
      } catch (const NoRootError&) {
      }
      grid = options.curve_grid.empty() ? default_curve_grid(root) : parse_real_list(options.curve_grid);
      write_comments(curve_text, loaded.comments);
      curve_text << "# prior: " << options.prior << '\n';
      write_constraint_curve(curve_text, ess_constraint_curve(loaded.table, prior, grid, mode));
      summary << "ess-curve: " << grid.size() << " points, n_prime_exact="
              << (std::isnan(root) ? std::string("none") : format_number(root)) << '\n';
    } else {
      throw InvalidInput("unknown experiment '" + name + "' (expected fig2, fig3 or ess-curve)");
    }

    if (options.out.empty()) {
      os << curve_text.str();
    } else {
      write_text(options.out, curve_text.str());
      os << summary.str() << "wrote " << options.out << '\n';
    }
  });
}

}  // namespace fairdep
