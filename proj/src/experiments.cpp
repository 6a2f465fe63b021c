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

#include "fairdep/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "fairdep/error.hpp"
#include "fairdep/ess.hpp"
#include "fairdep/io.hpp"
#include "fairdep/numerics.hpp"

namespace fairdep {
namespace {

constexpr std::size_t kClassStates = 4;

// The merged 2x2 puts (1 + kBlockDependence)/2 of its mass on the diagonal;
// inside each block the cells are 1/4 +- kWithinSlope * z of the block mass.
constexpr double kBlockDependence = 0.7;
constexpr double kWithinSlope = 1.6;

// Orientation-normalized key for one table. A table whose effective dof is
// zero (observed cells form a forest) falls back to nominal dof.
struct KeyedScore {
  double key = 0.0;
  double p_naive = 1.0;
};

KeyedScore experiment_key(const CountTable& table, MeasureKind kind, DofMode mode, int& fallbacks) {
  const auto mode_used = (mode == DofMode::effective && requires_dof(kind) && dof(table, mode) == 0)
                             ? (++fallbacks, DofMode::nominal)
                             : mode;
  const auto c = score_candidate("", table, kind, mode_used);
  return {c.key, c.p_naive};
}

std::string measure_list(std::span<const MeasureKind> measures) {
  std::string s;
  for (const auto m : measures) {
    if (!s.empty()) s += ",";
    s += to_string(m);
  }
  return s;
}

template <typename T>
std::string join(std::span<const T> values) {
  std::string s;
  for (const auto& v : values) {
    if (!s.empty()) s += ",";
    if constexpr (std::is_floating_point_v<T>)
      s += format_number(v);
    else
      s += std::to_string(v);
  }
  return s;
}

bool has_measure(std::span<const MeasureKind> measures, MeasureKind kind) {
  return std::ranges::find(measures, kind) != measures.end();
}

void check_common(int replicates, std::span<const std::int64_t> n_values, std::span<const MeasureKind> measures) {
  if (replicates < 1) throw InvalidInput("replicates must be >= 1");
  if (n_values.empty()) throw InvalidInput("at least one sample size is required");
  for (const auto n : n_values)
    if (n < 1) throw InvalidInput("sample sizes must be positive");
  if (measures.empty()) throw InvalidInput("at least one measure is required");
}

}  // namespace

ProbTable fig2_distribution(double z) {
  if (!(z >= 0.0 && z <= 0.125)) throw InvalidInput("z must lie in [0, 0.125]");
  constexpr int sign[2][2] = {{1, -1}, {-1, 1}};
  std::vector<double> cells(16);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const double block = 0.25 * (1.0 + kBlockDependence * sign[a / 2][b / 2]);
      const double within = 0.25 + kWithinSlope * z * sign[a % 2][b % 2];
      cells[a * 4 + b] = block * within;
    }
  return ProbTable::from_flat(4, 4, std::move(cells));
}

Partition block_partition() { return {{0, 1}, {2, 3}}; }

NaiveBayesModel::NaiveBayesModel(double z) : z_(z) {
  if (!(z >= 0.0 && z <= 0.25)) throw InvalidInput("naive Bayes z must lie in [0, 1/4]");
}

std::array<double, 4> NaiveBayesModel::four_state_conditional(std::size_t y) const {
  std::array<double, 4> p{};
  p.fill(std::max(0.0, 0.25 - z_));
  p[y] = 0.25 + 3.0 * z_;
  return p;
}

double nb_true_mi(const NaiveBayesModel& model, FeatureFamily family) {
  // I(Y;X) = H(X) - H(X|Y) with Y uniform over four states.
  if (family == FeatureFamily::binary) {
    double p1 = 0.0;
    double conditional = 0.0;
    for (const double q : NaiveBayesModel::binary_p1) {
      p1 += 0.25 * q;
      const std::array<double, 2> dist{q, 1.0 - q};
      conditional += 0.25 * entropy(dist);
    }
    const std::array<double, 2> marginal{p1, 1.0 - p1};
    return entropy(marginal) - conditional;
  }
  // Symmetric in Y: the marginal of X is uniform and every conditional has the same entropy.
  const auto cond = model.four_state_conditional(0);
  return std::log(4.0) - entropy(cond);
}

double nb_equal_information_z() {
  const double target = nb_true_mi(NaiveBayesModel(0.0), FeatureFamily::binary);
  double lo = 0.0;
  double hi = 0.25;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (nb_true_mi(NaiveBayesModel(mid), FeatureFamily::four_state) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<NbFeature> sample_nb_dataset(const NaiveBayesModel& model, std::int64_t n, RandomStream& stream) {
  if (n < 1) throw InvalidInput("sample size must be positive");
  constexpr std::size_t nb = NaiveBayesModel::binary_features;
  constexpr std::size_t nf = NaiveBayesModel::four_state_features;

  const std::array<double, kClassStates> class_probs{0.25, 0.25, 0.25, 0.25};
  const CategoricalSampler class_sampler(class_probs);
  std::vector<CategoricalSampler> four_state;
  std::vector<std::array<double, 4>> conditionals;
  for (std::size_t y = 0; y < kClassStates; ++y) conditionals.push_back(model.four_state_conditional(y));
  for (const auto& cond : conditionals) four_state.emplace_back(cond);

  std::vector<std::vector<std::int64_t>> binary_cells(nb, std::vector<std::int64_t>(kClassStates * 2, 0));
  std::vector<std::vector<std::int64_t>> four_cells(nf, std::vector<std::int64_t>(kClassStates * 4, 0));
  for (std::int64_t i = 0; i < n; ++i) {
    const std::size_t y = class_sampler(stream);
    for (std::size_t f = 0; f < nb; ++f) {
      const std::size_t x = stream.next_double() < NaiveBayesModel::binary_p1[y] ? 1 : 0;
      ++binary_cells[f][y * 2 + x];
    }
    for (std::size_t f = 0; f < nf; ++f) ++four_cells[f][y * 4 + four_state[y](stream)];
  }

  std::vector<NbFeature> features;
  features.reserve(nb + nf);
  for (std::size_t f = 0; f < nb; ++f)
    features.push_back({"X" + std::to_string(f + 1), 2,
                        CountTable::from_flat(kClassStates, 2, std::move(binary_cells[f]))});
  for (std::size_t f = 0; f < nf; ++f)
    features.push_back({"X" + std::to_string(nb + f + 1), 4,
                        CountTable::from_flat(kClassStates, 4, std::move(four_cells[f]))});
  return features;
}

const std::vector<double>& ExperimentCurve::fraction(MeasureKind kind) const {
  for (std::size_t m = 0; m < measures.size(); ++m)
    if (measures[m] == kind) return fractions[m];
  throw InvalidInput("curve has no column for measure " + std::string(to_string(kind)));
}

std::vector<ExperimentCurve> run_discretization_experiment(const DiscretizationConfig& config) {
  check_common(config.replicates, config.n_values, config.measures);
  if (config.z_grid.empty()) throw InvalidInput("z grid is empty");
  std::vector<ProbTable> truths;
  for (const double z : config.z_grid) truths.push_back(fig2_distribution(z));

  const auto part = block_partition();
  const bool with_p = has_measure(config.measures, MeasureKind::p_value);
  const std::size_t nz = config.z_grid.size();
  const std::size_t nm = config.measures.size();
  int fallbacks = 0;

  std::vector<ExperimentCurve> curves;
  for (std::size_t ni = 0; ni < config.n_values.size(); ++ni) {
    const auto n = config.n_values[ni];
    std::vector<std::vector<int>> favour(nm, std::vector<int>(nz, 0));
    std::vector<int> underflow(nz, 0);

    for (int r = 0; r < config.replicates; ++r) {
      // The same stream serves every z, so neighbouring grid points share their uniforms.
      const auto seed = RandomStream::substream(config.master_seed, static_cast<std::uint64_t>(r)).child_seed(ni);
      for (std::size_t zi = 0; zi < nz; ++zi) {
        RandomStream stream(seed);
        const CountTable fine = sample_table(truths[zi], n, stream);
        const CountTable coarse = merge_states(fine, part, part);
        for (std::size_t m = 0; m < nm; ++m) {
          const auto kind = config.measures[m];
          const auto kf = experiment_key(fine, kind, config.dof_mode, fallbacks);
          const auto kc = experiment_key(coarse, kind, config.dof_mode, fallbacks);
          bool coarse_wins = !(kf.key > kc.key);
          if (kind == MeasureKind::p_value && kf.p_naive == 0.0 && kc.p_naive == 0.0) {
            // Both naive p-values underflowed: plot the wrong answer so the failure is visible.
            ++underflow[zi];
            coarse_wins = config.z_grid[zi] > 0.0;
          }
          if (coarse_wins) ++favour[m][zi];
        }
      }
    }

    ExperimentCurve curve;
    curve.x_name = "z";
    curve.x_values = config.z_grid;
    curve.measures = config.measures;
    curve.group_name = "n";
    curve.group_value = static_cast<double>(n);
    curve.replicates = config.replicates;
    curve.master_seed = config.master_seed;
    const double reps = config.replicates;
    for (std::size_t m = 0; m < nm; ++m) {
      std::vector<double> f(nz);
      for (std::size_t zi = 0; zi < nz; ++zi) f[zi] = favour[m][zi] / reps;
      curve.fractions.push_back(std::move(f));
    }
    if (with_p)
      for (std::size_t zi = 0; zi < nz; ++zi) curve.p_value_underflow.push_back(underflow[zi] / reps);
    curves.push_back(std::move(curve));
  }

  for (auto& curve : curves) {
    curve.config = {{"experiment", "discretization (2 vs 4 states)"},
                    {"favoured", "2 states"},
                    {"n_values", join<std::int64_t>(config.n_values)},
                    {"z_grid", join<double>(config.z_grid)},
                    {"replicates", std::to_string(config.replicates)},
                    {"seed", std::to_string(config.master_seed)},
                    {"dof", std::string(to_string(config.dof_mode))},
                    {"measures", measure_list(config.measures)},
                    {"dof_fallbacks", std::to_string(fallbacks)}};
  }
  return curves;
}

ExperimentCurve run_feature_selection_experiment(const FeatureSelectionConfig& config) {
  check_common(config.replicates, config.n_values, config.measures);
  const NaiveBayesModel model(config.z);
  const bool four_state_truth =
      nb_true_mi(model, FeatureFamily::four_state) > nb_true_mi(model, FeatureFamily::binary);
  const bool with_p = has_measure(config.measures, MeasureKind::p_value);
  const std::size_t nn = config.n_values.size();
  const std::size_t nm = config.measures.size();
  int fallbacks = 0;

  std::vector<std::vector<int>> favour(nm, std::vector<int>(nn, 0));
  std::vector<int> underflow(nn, 0);

  for (int r = 0; r < config.replicates; ++r) {
    const auto replicate = RandomStream::substream(config.master_seed, static_cast<std::uint64_t>(r));
    for (std::size_t ni = 0; ni < nn; ++ni) {
      RandomStream stream(replicate.child_seed(ni));
      const auto features = sample_nb_dataset(model, config.n_values[ni], stream);
      for (std::size_t m = 0; m < nm; ++m) {
        const auto kind = config.measures[m];
        std::vector<ScoredCandidate> scored;
        scored.reserve(features.size());
        double min_p_binary = std::numeric_limits<double>::infinity();
        double min_p_four = std::numeric_limits<double>::infinity();
        for (const auto& f : features) {
          const auto k = experiment_key(f.table, kind, config.dof_mode, fallbacks);
          ScoredCandidate c;
          c.id = f.id;
          c.key = k.key;
          c.dof = static_cast<std::int64_t>((f.cardinality - 1) * (kClassStates - 1));
          scored.push_back(std::move(c));
          if (kind == MeasureKind::p_value)
            (f.cardinality == 2 ? min_p_binary : min_p_four) =
                std::min(f.cardinality == 2 ? min_p_binary : min_p_four, k.p_naive);
        }
        const std::string best = rank(std::move(scored)).order.front().id;
        bool two_state_wins = false;
        for (const auto& f : features)
          if (f.id == best) two_state_wins = f.cardinality == 2;
        if (kind == MeasureKind::p_value && min_p_binary == 0.0 && min_p_four == 0.0) {
          ++underflow[ni];
          two_state_wins = four_state_truth;
        }
        if (two_state_wins) ++favour[m][ni];
      }
    }
  }

  ExperimentCurve curve;
  curve.x_name = "n";
  for (const auto n : config.n_values) curve.x_values.push_back(static_cast<double>(n));
  curve.measures = config.measures;
  curve.replicates = config.replicates;
  curve.master_seed = config.master_seed;
  const double reps = config.replicates;
  for (std::size_t m = 0; m < nm; ++m) {
    std::vector<double> f(nn);
    for (std::size_t i = 0; i < nn; ++i) f[i] = favour[m][i] / reps;
    curve.fractions.push_back(std::move(f));
  }
  if (with_p)
    for (std::size_t i = 0; i < nn; ++i) curve.p_value_underflow.push_back(underflow[i] / reps);
  curve.config = {{"experiment", "feature selection (naive Bayes, 2- vs 4-state features)"},
                  {"favoured", "2-state feature"},
                  {"z", format_number(config.z)},
                  {"n_values", join<std::int64_t>(config.n_values)},
                  {"replicates", std::to_string(config.replicates)},
                  {"seed", std::to_string(config.master_seed)},
                  {"dof", std::string(to_string(config.dof_mode))},
                  {"measures", measure_list(config.measures)},
                  {"dof_fallbacks", std::to_string(fallbacks)}};
  return curve;
}

ConstraintCurve ess_constraint_curve(const CountTable& table, const ProbTable& prior,
                                     std::span<const double> n_prime_grid, DofMode mode) {
  ConstraintCurve curve;
  curve.rhs = constraint_rhs(table, mode);
  for (const double np : n_prime_grid) {
    curve.n_prime.push_back(np);
    curve.lhs.push_back(constraint_lhs(table, np, prior));
  }
  return curve;
}

void write_curves(std::ostream& out, std::span<const ExperimentCurve> curves) {
  if (curves.empty()) return;
  const auto& head = curves.front();
  for (const auto& [key, value] : head.config) out << "# " << key << ": " << value << '\n';

  if (!head.group_name.empty()) out << head.group_name << ',';
  out << head.x_name;
  for (const auto m : head.measures) out << ',' << to_string(m);
  if (!head.p_value_underflow.empty()) out << ",p_value_underflow";
  out << '\n';

  for (const auto& curve : curves)
    for (std::size_t i = 0; i < curve.x_values.size(); ++i) {
      if (!curve.group_name.empty()) out << format_number(curve.group_value) << ',';
      out << format_number(curve.x_values[i]);
      for (const auto& f : curve.fractions) out << ',' << format_number(f[i]);
      if (!curve.p_value_underflow.empty()) out << ',' << format_number(curve.p_value_underflow[i]);
      out << '\n';
    }
}

void write_constraint_curve(std::ostream& out, const ConstraintCurve& curve) {
  out << "# rhs: " << format_number(curve.rhs) << '\n';
  out << "n_prime,lhs,rhs\n";
  for (std::size_t i = 0; i < curve.n_prime.size(); ++i)
    out << format_number(curve.n_prime[i]) << ',' << format_number(curve.lhs[i]) << ','
        << format_number(curve.rhs) << '\n';
}

}  // namespace fairdep
