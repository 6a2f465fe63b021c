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

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "fairdep/error.hpp"
#include "fairdep/ess.hpp"
#include "fairdep/experiments.hpp"
#include "fairdep/measures.hpp"
#include "fairdep/ranking.hpp"
#include "fairdep/tables.hpp"

namespace py = pybind11;
using namespace fairdep;

namespace {

DofMode mode_of(const std::string& name) { return parse_dof_mode(name); }

std::vector<MeasureKind> kinds_of(const std::vector<std::string>& names) {
  std::vector<MeasureKind> kinds;
  for (const auto& n : names) kinds.push_back(parse_measure_kind(n));
  return kinds;
}

ProbTable prior_or_uniform(const CountTable& table, const std::optional<ProbTable>& prior) {
  return prior ? *prior : ProbTable::uniform(table.rows(), table.cols());
}

py::dict report_dict(const DependenceReport& r) {
  py::dict d;
  d["n"] = r.n;
  d["dof"] = r.dof;
  d["dof_mode"] = std::string(to_string(r.dof_mode));
  d["mi_plugin"] = r.mi_plugin;
  d["mi_bc"] = r.mi_bc;
  d["indep_std"] = r.indep_std;
  d["r_score"] = r.r_score;
  d["si"] = r.si;
  d["si_fisher"] = r.si_fisher;
  d["ni"] = r.ni;
  d["p_naive"] = r.p_naive;
  d["log_p"] = r.log_p;
  return d;
}

std::vector<NamedTable> named_tables(const std::vector<std::pair<std::string, CountTable>>& items) {
  return {items.begin(), items.end()};
}

}  // namespace

PYBIND11_MODULE(_fairdep, m) {
  m.doc() = "Dependence measures for discrete variables that are fair across cardinalities";

  auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<ZeroDofError>(m, "ZeroDofError", domain_error.ptr());
  py::register_exception<NoRootError>(m, "NoRootError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<CandidateError>(m, "CandidateError", PyExc_RuntimeError);

  py::class_<RandomStream>(m, "RandomStream")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static("substream", &RandomStream::substream, py::arg("master"), py::arg("index"))
      .def("next_u64", &RandomStream::next_u64)
      .def("next_double", &RandomStream::next_double)
      .def_property_readonly("seed", &RandomStream::seed);

  py::class_<CountTable>(m, "CountTable")
      .def(py::init(&CountTable::from_counts), py::arg("counts"))
      .def_static(
          "from_samples",
          [](const std::vector<std::pair<std::size_t, std::size_t>>& pairs, std::size_t card_a, std::size_t card_b) {
            return CountTable::from_samples(pairs, card_a, card_b);
          },
          py::arg("pairs"), py::arg("card_a"), py::arg("card_b"))
      .def_property_readonly("rows", &CountTable::rows)
      .def_property_readonly("cols", &CountTable::cols)
      .def_property_readonly("total", &CountTable::total)
      .def("at", &CountTable::at, py::arg("a"), py::arg("b"))
      .def("row_sums", &CountTable::row_sums)
      .def("col_sums", &CountTable::col_sums)
      .def("scaled", &CountTable::scaled, py::arg("factor"))
      .def("transposed", &CountTable::transposed)
      .def("to_list", &CountTable::to_nested)
      .def(py::self == py::self)
      .def("__repr__", [](const CountTable& t) { return "CountTable(" + py::repr(py::cast(t.to_nested())).cast<std::string>() + ")"; });

  py::class_<ProbTable>(m, "ProbTable")
      .def(py::init(&ProbTable::from_probs), py::arg("probs"))
      .def_static("uniform", &ProbTable::uniform, py::arg("rows"), py::arg("cols"))
      .def_property_readonly("rows", &ProbTable::rows)
      .def_property_readonly("cols", &ProbTable::cols)
      .def("at", &ProbTable::at, py::arg("a"), py::arg("b"))
      .def("to_list", &ProbTable::to_nested);

  m.def("empirical_joint", &empirical_joint, py::arg("table"));
  m.def("dof", [](const CountTable& t, const std::string& mode) { return dof(t, mode_of(mode)); }, py::arg("table"),
        py::arg("mode") = "effective");
  m.def("merge_states", py::overload_cast<const CountTable&, const Partition&, const Partition&>(&merge_states),
        py::arg("table"), py::arg("part_a"), py::arg("part_b"));
  m.def("merge_states", py::overload_cast<const ProbTable&, const Partition&, const Partition&>(&merge_states),
        py::arg("probs"), py::arg("part_a"), py::arg("part_b"));
  m.def("sample_table", &sample_table, py::arg("probs"), py::arg("n"), py::arg("stream"));

  m.def("entropy", [](const std::vector<double>& p) { return entropy(p); }, py::arg("probs"));
  m.def("mi_plugin", &mi_plugin, py::arg("table"));
  m.def("mi_bias_corrected", [](const CountTable& t, const std::string& mode) { return mi_bias_corrected(t, mode_of(mode)); },
        py::arg("table"), py::arg("mode") = "effective");
  m.def("independence_std", [](const CountTable& t, const std::string& mode) { return independence_std(t, mode_of(mode)); },
        py::arg("table"), py::arg("mode") = "effective");
  m.def("r_score", [](const CountTable& t, const std::string& mode) { return r_score(t, mode_of(mode)); },
        py::arg("table"), py::arg("mode") = "effective");
  m.def("standardized_information",
        [](const CountTable& t, const std::string& mode, bool fisher) {
          return standardized_information(t, mode_of(mode), fisher);
        },
        py::arg("table"), py::arg("mode") = "effective", py::arg("fisher_corrected") = false);
  m.def("normalized_mi", &normalized_mi, py::arg("table"));
  m.def("conditional_entropy",
        [](const CountTable& t, const std::string& target) {
          if (target != "a" && target != "b") throw InvalidInput("target must be 'a' or 'b'");
          return conditional_entropy(t, target == "a" ? Axis::a : Axis::b);
        },
        py::arg("table"), py::arg("target"));
  m.def("p_value",
        [](const CountTable& t, const std::string& mode) {
          const auto p = p_value(t, mode_of(mode));
          return py::make_tuple(p.naive, p.log_p);
        },
        py::arg("table"), py::arg("mode") = "effective", "Returns (naive, log_p).");
  m.def("report", [](const CountTable& t, const std::string& mode) { return report_dict(report(t, mode_of(mode))); },
        py::arg("table"), py::arg("mode") = "effective");

  py::class_<EssResult>(m, "EssResult")
      .def_readonly("n_prime_exact", &EssResult::n_prime_exact)
      .def_readonly("n_prime_approx", &EssResult::n_prime_approx)
      .def_readonly("rhs", &EssResult::rhs)
      .def_readonly("residual", &EssResult::residual)
      .def_readonly("used_safe_joint", &EssResult::used_safe_joint)
      .def_readonly("iterations", &EssResult::iterations);
  m.def("solve_ess",
        [](const CountTable& t, const std::optional<ProbTable>& prior, const std::string& mode, double tol) {
          return solve_ess(t, prior_or_uniform(t, prior), mode_of(mode), tol);
        },
        py::arg("table"), py::arg("prior") = py::none(), py::arg("mode") = "effective", py::arg("tol") = 1e-10);
  m.def("approx_ess",
        [](const CountTable& t, const std::optional<ProbTable>& prior, const std::string& mode) {
          return approx_ess(t, prior_or_uniform(t, prior), mode_of(mode));
        },
        py::arg("table"), py::arg("prior") = py::none(), py::arg("mode") = "effective");
  m.def("constraint_lhs",
        [](const CountTable& t, double n_prime, const std::optional<ProbTable>& prior) {
          return constraint_lhs(t, n_prime, prior_or_uniform(t, prior));
        },
        py::arg("table"), py::arg("n_prime"), py::arg("prior") = py::none());
  m.def("constraint_rhs", [](const CountTable& t, const std::string& mode) { return constraint_rhs(t, mode_of(mode)); },
        py::arg("table"), py::arg("mode") = "effective");

  py::class_<ScoredCandidate>(m, "ScoredCandidate")
      .def_readonly("id", &ScoredCandidate::id)
      .def_readonly("score", &ScoredCandidate::score)
      .def_readonly("key", &ScoredCandidate::key)
      .def_readonly("dof", &ScoredCandidate::dof)
      .def_readonly("n", &ScoredCandidate::n)
      .def_readonly("p_naive", &ScoredCandidate::p_naive)
      .def("__repr__", [](const ScoredCandidate& c) {
        return "ScoredCandidate(id=" + c.id + ", score=" + std::to_string(c.score) + ")";
      });
  m.def("rank",
        [](const std::vector<std::pair<std::string, CountTable>>& items, const std::string& measure,
           const std::string& mode) {
          return rank(score_candidates(named_tables(items), parse_measure_kind(measure), mode_of(mode))).order;
        },
        py::arg("candidates"), py::arg("measure") = "si", py::arg("mode") = "effective",
        "Ranks (id, table) pairs, most dependent first.");
  m.def("select_best_feature",
        [](const std::vector<std::pair<std::string, CountTable>>& items, const std::string& measure,
           const std::string& mode) {
          return select_best_feature(named_tables(items), parse_measure_kind(measure), mode_of(mode));
        },
        py::arg("features"), py::arg("measure") = "si", py::arg("mode") = "effective");
  m.def("compare_discretizations",
        [](const CountTable& fine, const Partition& part_a, const Partition& part_b, const std::string& measure,
           const std::string& mode) {
          return std::string(
              to_string(compare_discretizations(fine, part_a, part_b, parse_measure_kind(measure), mode_of(mode))));
        },
        py::arg("fine"), py::arg("part_a"), py::arg("part_b"), py::arg("measure") = "si", py::arg("mode") = "effective");
  m.def("si_threshold", &si_threshold, py::arg("alpha"));
  m.def("is_notable", &is_notable, py::arg("si"), py::arg("alpha"));

  m.def("fig2_distribution", &fig2_distribution, py::arg("z"));
  m.def("nb_true_mi",
        [](double z, const std::string& family) {
          if (family != "binary" && family != "four_state") throw InvalidInput("family must be binary or four_state");
          return nb_true_mi(NaiveBayesModel(z), family == "binary" ? FeatureFamily::binary : FeatureFamily::four_state);
        },
        py::arg("z"), py::arg("family"));
  m.def("nb_equal_information_z", &nb_equal_information_z);

  py::class_<ExperimentCurve>(m, "ExperimentCurve")
      .def_readonly("x_name", &ExperimentCurve::x_name)
      .def_readonly("x_values", &ExperimentCurve::x_values)
      .def_readonly("group_name", &ExperimentCurve::group_name)
      .def_readonly("group_value", &ExperimentCurve::group_value)
      .def_readonly("replicates", &ExperimentCurve::replicates)
      .def_readonly("p_value_underflow", &ExperimentCurve::p_value_underflow)
      .def_property_readonly("fractions",
                             [](const ExperimentCurve& c) {
                               py::dict d;
                               for (std::size_t i = 0; i < c.measures.size(); ++i)
                                 d[py::str(std::string(to_string(c.measures[i])))] = c.fractions[i];
                               return d;
                             })
      .def("to_text", [](const ExperimentCurve& c) {
        std::ostringstream os;
        write_curves(os, std::span(&c, 1));
        return os.str();
      });
  m.def("run_feature_selection_experiment",
        [](double z, const std::vector<std::int64_t>& n_values, int replicates, const std::vector<std::string>& measures,
           std::uint64_t seed, const std::string& mode) {
          FeatureSelectionConfig config;
          config.z = z;
          config.n_values = n_values;
          config.replicates = replicates;
          config.measures = kinds_of(measures);
          config.master_seed = seed;
          config.dof_mode = mode_of(mode);
          py::gil_scoped_release release;
          return run_feature_selection_experiment(config);
        },
        py::arg("z") = 0.1, py::arg("n_values") = FeatureSelectionConfig{}.n_values, py::arg("replicates") = 100,
        py::arg("measures") = std::vector<std::string>{"mi_bc", "si", "ni", "p_value"}, py::arg("seed") = 0,
        py::arg("mode") = "nominal");
  m.def("run_discretization_experiment",
        [](const std::vector<double>& z_grid, const std::vector<std::int64_t>& n_values, int replicates,
           const std::vector<std::string>& measures, std::uint64_t seed, const std::string& mode) {
          DiscretizationConfig config;
          config.z_grid = z_grid;
          config.n_values = n_values;
          config.replicates = replicates;
          config.measures = kinds_of(measures);
          config.master_seed = seed;
          config.dof_mode = mode_of(mode);
          py::gil_scoped_release release;
          return run_discretization_experiment(config);
        },
        py::arg("z_grid"), py::arg("n_values") = DiscretizationConfig{}.n_values, py::arg("replicates") = 100,
        py::arg("measures") = std::vector<std::string>{"mi_bc", "si", "ni", "p_value"}, py::arg("seed") = 0,
        py::arg("mode") = "nominal");

#ifdef FAIRDEP_VERSION
  m.attr("__version__") = FAIRDEP_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
