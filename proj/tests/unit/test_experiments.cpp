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

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "fairdep/error.hpp"
#include "fairdep/ess.hpp"
#include "fairdep/experiments.hpp"
#include "fairdep/measures.hpp"

using namespace fairdep;

namespace {

double true_mi(const ProbTable& p) {
  const auto [pa, pb] = marginals(p);
  return entropy(pa) + entropy(pb) - entropy(p.cells());
}

// Within-block factor of the family: the joint of (a mod 2, b mod 2) given the block.
ProbTable within_factor(const ProbTable& p) {
  const auto coarse = merge_states(p, block_partition(), block_partition());
  std::vector<double> w(4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) w[a * 2 + b] = p.at(a, b) / coarse.at(0, 0);
  return ProbTable::from_flat(2, 2, std::move(w));
}

DiscretizationConfig fig2_config(std::vector<double> z, std::vector<std::int64_t> n, int reps) {
  DiscretizationConfig c;
  c.z_grid = std::move(z);
  c.n_values = std::move(n);
  c.replicates = reps;
  c.master_seed = 2024;
  return c;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("discretization family: uniform marginals and a z-free coarse table") {
    const auto coarse0 = merge_states(fig2_distribution(0.0), block_partition(), block_partition());
    for (double z = 0.0; z <= 0.125; z += 0.025) {
      const auto p = fig2_distribution(z);
      const auto [pa, pb] = marginals(p);
      for (const double x : pa) CHECK(x == doctest::Approx(0.25).epsilon(1e-14));
      for (const double x : pb) CHECK(x == doctest::Approx(0.25).epsilon(1e-14));
      const auto coarse = merge_states(p, block_partition(), block_partition());
      for (std::size_t i = 0; i < 4; ++i) CHECK(coarse.cells()[i] == doctest::Approx(coarse0.cells()[i]).epsilon(1e-14));
    }
  }

  TEST_CASE("discretization family: fine information splits into block and within-block parts") {
    const auto coarse = merge_states(fig2_distribution(0.0), block_partition(), block_partition());
    CHECK(true_mi(fig2_distribution(0.0)) == doctest::Approx(true_mi(coarse)).epsilon(1e-13));
    double prev = -1.0;
    for (double z = 0.0; z <= 0.125; z += 0.0125) {
      const auto p = fig2_distribution(z);
      const double within = true_mi(within_factor(p));
      CHECK(true_mi(p) == doctest::Approx(true_mi(coarse) + within).epsilon(1e-12));
      CHECK(within > prev);
      prev = within;
    }
    CHECK_THROWS_AS(fig2_distribution(-0.01), InvalidInput);
    CHECK_THROWS_AS(fig2_distribution(0.13), InvalidInput);
  }

  TEST_CASE("naive Bayes model information") {
    CHECK(nb_true_mi(NaiveBayesModel(0.0), FeatureFamily::binary) == doctest::Approx(0.1607).epsilon(1e-3));
    CHECK(nb_true_mi(NaiveBayesModel(0.2), FeatureFamily::binary) ==
          nb_true_mi(NaiveBayesModel(0.0), FeatureFamily::binary));
    CHECK(nb_true_mi(NaiveBayesModel(0.0), FeatureFamily::four_state) == doctest::Approx(0.0).epsilon(1e-15));
    const double z = nb_equal_information_z();
    CHECK_UNARY(z >= 0.085 && z <= 0.092);
    CHECK(nb_true_mi(NaiveBayesModel(z), FeatureFamily::four_state) ==
          doctest::Approx(nb_true_mi(NaiveBayesModel(z), FeatureFamily::binary)).epsilon(1e-9));
    for (const double zz : {0.0, 0.05, 0.1, 0.25}) {
      const auto c = NaiveBayesModel(zz).four_state_conditional(2);
      CHECK(c[0] + c[1] + c[2] + c[3] == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(c[2] == doctest::Approx(0.25 + 3 * zz));
    }
    CHECK_THROWS_AS(NaiveBayesModel(0.3), InvalidInput);
  }

  TEST_CASE("naive Bayes sampling") {
    RandomStream rs(3);
    const auto deterministic = sample_nb_dataset(NaiveBayesModel(0.25), 500, rs);
    REQUIRE(deterministic.size() == 20);
    for (const auto& f : deterministic) {
      CHECK(f.table.total() == 500);
      CHECK(f.table.rows() == 4);
      CHECK(f.table.cols() == f.cardinality);
      if (f.cardinality == 4)
        for (std::size_t y = 0; y < 4; ++y)
          for (std::size_t x = 0; x < 4; ++x)
            if (x != y) CHECK(f.table.at(y, x) == 0);
    }
    CHECK(deterministic.front().id == "X1");
    CHECK(deterministic.back().id == "X20");

    RandomStream big(4);
    const auto data = sample_nb_dataset(NaiveBayesModel(0.1), 100000, big);
    const double sigma = std::sqrt(0.45 * 0.55 / 1e5);
    for (std::size_t f = 0; f < 10; ++f) {
      const double ones = double(data[f].table.col_sums()[1]) / 1e5;
      CHECK(std::fabs(ones - 0.45) <= 4.0 * sigma);
    }
  }

  TEST_CASE("discretization experiment: determinism and range") {
    const auto cfg = fig2_config({0.0, 0.06, 0.12}, {25, 100}, 1);
    const auto a = run_discretization_experiment(cfg);
    const auto b = run_discretization_experiment(cfg);
    REQUIRE(a.size() == 2);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].fractions == b[i].fractions);
    for (const auto& c : run_discretization_experiment(fig2_config({0.0, 0.05, 0.1}, {25, 100}, 20)))
      for (const auto& f : c.fractions)
        for (const double x : f) CHECK_UNARY(x >= 0.0 && x <= 1.0);
    CHECK_THROWS_AS(run_discretization_experiment(fig2_config({}, {25}, 1)), InvalidInput);
    CHECK_THROWS_AS(run_discretization_experiment(fig2_config({0.0}, {25}, 0)), InvalidInput);
  }

  TEST_CASE("discretization experiment: standardized information prefers the coarse table only while it should") {
    const auto curves = run_discretization_experiment(fig2_config({0.0, 0.1}, {100, 500}, 100));
    CHECK(curves[0].fraction(MeasureKind::si)[0] >= 0.9);
    CHECK(curves[1].fraction(MeasureKind::si)[1] <= 0.1);
  }

  TEST_CASE("discretization experiment: Occam transition, NI stagnation and p-value underflow") {
    const auto curves = run_discretization_experiment(fig2_config({0.05, 0.06, 0.1}, {25, 100, 500}, 200));
    for (std::size_t i = 1; i < curves.size(); ++i)
      CHECK(curves[i].fraction(MeasureKind::si)[0] <= curves[i - 1].fraction(MeasureKind::si)[0] + 0.1);
    const auto& at500 = curves[2];
    CHECK(at500.fraction(MeasureKind::ni)[2] - at500.fraction(MeasureKind::si)[2] >= 0.2);
    CHECK(at500.p_value_underflow[1] > 0.0);
    CHECK(at500.p_value_underflow[2] > 0.0);
  }

  TEST_CASE("feature selection experiment: determinism and configuration checks") {
    FeatureSelectionConfig cfg;
    cfg.n_values = {32, 256};
    cfg.replicates = 5;
    cfg.master_seed = 9;
    const auto a = run_feature_selection_experiment(cfg);
    CHECK(a.fractions == run_feature_selection_experiment(cfg).fractions);
    CHECK(a.x_values == std::vector<double>{32, 256});
    CHECK(a.p_value_underflow.size() == 2);
    CHECK_THROWS_AS((void)a.fraction(MeasureKind::si_fisher), InvalidInput);
    cfg.z = 0.3;
    CHECK_THROWS_AS(run_feature_selection_experiment(cfg), InvalidInput);
    cfg.z = 0.1;
    cfg.n_values = {0};
    CHECK_THROWS_AS(run_feature_selection_experiment(cfg), InvalidInput);
  }

  TEST_CASE("feature selection experiment: large samples separate the families") {
    FeatureSelectionConfig cfg;
    cfg.n_values = {16384};
    cfg.replicates = 40;
    cfg.measures = {MeasureKind::si, MeasureKind::mi_bc};
    cfg.master_seed = 5;
    CHECK(run_feature_selection_experiment(cfg).fraction(MeasureKind::si)[0] <= 0.05);
    cfg.z = 0.08;
    const auto low = run_feature_selection_experiment(cfg);
    CHECK(low.fraction(MeasureKind::si)[0] >= 0.9);
    CHECK(low.fraction(MeasureKind::mi_bc)[0] >= 0.9);
  }

  TEST_CASE("curve text format") {
    const auto curves = run_discretization_experiment(fig2_config({0.0, 0.1}, {25, 100}, 2));
    std::ostringstream os;
    write_curves(os, curves);
    std::istringstream in(os.str());
    std::string line;
    std::vector<std::string> data;
    int comments = 0;
    while (std::getline(in, line)) (line.rfind("# ", 0) == 0 ? (void)++comments : data.push_back(line));
    CHECK(comments >= 5);
    REQUIRE(data.size() == 5);
    CHECK(data[0] == "n,z,mi_bc,si,ni,p_value,p_value_underflow");
    CHECK(data[1].rfind("25,0,", 0) == 0);
    CHECK(data[4].rfind("100,0.1,", 0) == 0);
  }

  TEST_CASE("constraint curve crosses once, at the solver root") {
    const auto t = CountTable::from_counts({{200, 100}, {100, 200}});
    const auto q = ProbTable::uniform(2, 2);
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(i * 0.1);
    const auto curve = ess_constraint_curve(t, q, grid, DofMode::nominal);
    CHECK(curve.lhs[0] == doctest::Approx(mi_plugin(t)).epsilon(1e-14));
    int crossings = 0;
    double where = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
      if ((curve.lhs[i - 1] - curve.rhs) * (curve.lhs[i] - curve.rhs) <= 0.0) {
        ++crossings;
        const double f0 = curve.lhs[i - 1] - curve.rhs, f1 = curve.lhs[i] - curve.rhs;
        where = grid[i - 1] + (grid[i] - grid[i - 1]) * f0 / (f0 - f1);
      }
    CHECK(crossings == 1);
    CHECK(where == doctest::Approx(solve_ess(t, q, DofMode::nominal).n_prime_exact).epsilon(1e-3));
  }
}
