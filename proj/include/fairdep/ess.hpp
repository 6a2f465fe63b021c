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
#include <vector>

#include "fairdep/tables.hpp"

// Equivalent sample size for additive smoothing of a two-way table,
//   p~_ab = (N_ab + N' q_ab) / (N + N'),
// with N' fixed by requiring sum_ab p~_ab L_ab = I - d/N, where
// L_ab = ln[p(a,b) / (p(a) p(b))] on the empirical distribution.

namespace fairdep {

struct SmoothedParams {
  ProbTable probs;
  double n_prime = 0.0;
  ProbTable prior;
};

/// Throws InvalidInput on a negative n_prime or a prior of a different shape.
SmoothedParams smoothed_params(const CountTable& table, double n_prime, const ProbTable& prior);

/// Row-major field of L_ab. When any cell is empty, p(a,b) in the log is
/// replaced by max(N_ab, 1)/N for every cell; the marginals stay empirical.
struct LogRatioField {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  bool used_safe_joint = false;

  [[nodiscard]] double at(std::size_t a, std::size_t b) const { return values[a * cols + b]; }
};

/// Throws InvalidInput when a row or column of the table is empty.
LogRatioField log_ratio_field(const CountTable& table);

/// sum_ab p~_ab(N') L_ab.
double constraint_lhs(const CountTable& table, double n_prime, const ProbTable& prior);

/// I - d/N.
double constraint_rhs(const CountTable& table, DofMode mode);

/// Prior expectation <L>_q = sum_ab q_ab L_ab.
double prior_log_ratio(const CountTable& table, const ProbTable& prior);

struct EssResult {
  double n_prime_exact = 0.0;
  double n_prime_approx = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  bool used_safe_joint = false;
  int iterations = 0;
};

/// Bracketed bisection on N'. The bracket starts at [0, 1] and doubles until
/// the constraint changes sign (capped at 2^60). Stops once
/// |lhs(N') - rhs| <= tol. Throws NoRootError when no positive root exists
/// and ConvergenceError when the iteration cap is reached.
EssResult solve_ess(const CountTable& table, const ProbTable& prior, DofMode mode, double tol = 1e-10);

/// Closed form N' = d / (I - <L>_q), valid while N'^2 << N.
/// Throws NoRootError when the denominator is not positive.
double approx_ess(const CountTable& table, const ProbTable& prior, DofMode mode);

}  // namespace fairdep
