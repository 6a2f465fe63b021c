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

#include <cmath>
#include <cstdint>
#include <vector>

#include "fairdep/numerics.hpp"
#include "fairdep/tables.hpp"

namespace fairdep::testing {

inline std::size_t uniform_index(RandomStream& rs, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rs.next_u64() % (hi - lo + 1));
}

/// Random joint distribution with strictly positive weights.
inline ProbTable random_probs(RandomStream& rs, std::size_t rows, std::size_t cols) {
  std::vector<double> w(rows * cols);
  double total = 0.0;
  for (auto& x : w) total += (x = 0.05 + rs.next_double());
  for (auto& x : w) x /= total;
  return ProbTable::from_flat(rows, cols, std::move(w));
}

/// Random table with cards in [2, max_card] and N in [n_lo, n_hi] (log-uniform).
inline CountTable random_table(RandomStream& rs, std::size_t max_card, std::int64_t n_lo, std::int64_t n_hi) {
  const auto rows = uniform_index(rs, 2, max_card);
  const auto cols = uniform_index(rs, 2, max_card);
  const double log_n = std::log(double(n_lo)) + rs.next_double() * (std::log(double(n_hi)) - std::log(double(n_lo)));
  const auto n = static_cast<std::int64_t>(std::llround(std::exp(log_n)));
  return sample_table(random_probs(rs, rows, cols), n, rs);
}

/// Sum of x^i/i! computed in log space, for ln Q(k, x) with integer k.
inline double log_poisson_head(int k, double x) {
  double m = -INFINITY;
  std::vector<double> terms;
  for (int i = 0; i < k; ++i) {
    terms.push_back(i * std::log(x) - std::lgamma(i + 1.0));
    m = std::max(m, terms.back());
  }
  double s = 0.0;
  for (const double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

/// Composite Simpson rule.
template <typename F>
double simpson(F f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace fairdep::testing
