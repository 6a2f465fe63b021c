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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fairdep/commands.hpp"

namespace {

void add_source_flags(CLI::App& cmd, fairdep::TableSource& source) {
  cmd.add_option("-i,--input", source.input, "Count table or dataset file ('-' for stdin)")->required();
  cmd.add_option("--format", source.format, "auto, counts or dataset")
      ->check(CLI::IsMember({"auto", "counts", "dataset"}))
      ->capture_default_str();
  cmd.add_option("--pair", source.pair, "Dataset columns to cross, as A,B");
  cmd.add_option("--delimiter", source.delimiter, "Dataset field delimiter")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair dependence measures for discrete variables"};
  app.require_subcommand(1);

  fairdep::MeasureOptions measure;
  auto* measure_cmd = app.add_subcommand("measure", "Dependence report for one pair of variables");
  add_source_flags(*measure_cmd, measure.source);
  measure_cmd->add_option("--dof", measure.dof, "nominal or effective")->capture_default_str();

  fairdep::RankOptions rank;
  auto* rank_cmd = app.add_subcommand("rank", "Rank dataset features against a class column");
  rank_cmd->add_option("-i,--input", rank.input, "Dataset file ('-' for stdin)")->required();
  rank_cmd->add_option("--class", rank.class_column, "Class column name")->required();
  rank_cmd->add_option("--measure", rank.measure, "mi_plugin, mi_bc, si, si_fisher, ni or p_value")
      ->capture_default_str();
  rank_cmd->add_option("--alpha", rank.alpha, "Significance level for the notable flag")->capture_default_str();
  rank_cmd->add_option("--dof", rank.dof, "nominal or effective")->capture_default_str();
  rank_cmd->add_option("--delimiter", rank.delimiter, "Dataset field delimiter")->capture_default_str();

  fairdep::EssOptions ess;
  auto* ess_cmd = app.add_subcommand("ess", "Equivalent sample size of a smoothing prior");
  add_source_flags(*ess_cmd, ess.source);
  ess_cmd->add_option("--prior", ess.prior, "'uniform' or a file of prior weights")->capture_default_str();
  ess_cmd->add_option("--tol", ess.tol, "Root tolerance")->capture_default_str();
  ess_cmd->add_option("--dof", ess.dof, "nominal or effective")->capture_default_str();
  ess_cmd->add_flag("--curve", ess.curve, "Append the constraint curve");
  ess_cmd->add_option("--grid", ess.curve_grid, "Curve grid as a list or start:stop:step");

  fairdep::ExperimentOptions exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a seeded simulation and write its curve");
  exp_cmd->add_option("name", exp.name, "fig2, fig3 or ess-curve")->required();
  exp_cmd->add_option("--seed", exp.seed, "Master seed")->capture_default_str();
  exp_cmd->add_option("-o,--out", exp.out, "Curve output file (stdout if omitted)");
  exp_cmd->add_option("--replicates", exp.replicates, "Replicates per grid point");
  exp_cmd->add_option("--z", exp.z, "Noise level (fig3)");
  exp_cmd->add_option("--n", exp.n_values, "Sample sizes, comma-separated");
  exp_cmd->add_option("--z-grid", exp.z_grid, "z values (fig2) as a list or start:stop:step");
  exp_cmd->add_option("--measures", exp.measures, "Measures, comma-separated");
  exp_cmd->add_option("--dof", exp.dof, "nominal or effective")->capture_default_str();
  exp_cmd->add_option("-i,--input", exp.source.input, "Count table (ess-curve)");
  exp_cmd->add_option("--format", exp.source.format, "auto, counts or dataset (ess-curve)");
  exp_cmd->add_option("--pair", exp.source.pair, "Dataset columns (ess-curve)");
  exp_cmd->add_option("--prior", exp.prior, "'uniform' or a file of prior weights (ess-curve)");
  exp_cmd->add_option("--grid", exp.curve_grid, "N' grid (ess-curve)");

  CLI11_PARSE(app, argc, argv);

  if (*measure_cmd) return fairdep::cmd_measure(measure, std::cout, std::cerr);
  if (*rank_cmd) return fairdep::cmd_rank(rank, std::cout, std::cerr);
  if (*ess_cmd) return fairdep::cmd_ess(ess, std::cout, std::cerr);
  return fairdep::cmd_experiment(exp, std::cout, std::cerr);
}
