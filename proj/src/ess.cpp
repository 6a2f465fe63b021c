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

#include "fairdep/ess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fairdep/error.hpp"
#include "fairdep/measures.hpp"

namespace fairdep {
namespace {

constexpr double kBracketCap = 1152921504606846976.0;  // 2^60
constexpr int kMaxBisections = 400;

void check_prior(const CountTable& table, const ProbTable& prior) {
  if (prior.rows() != table.rows() || prior.cols() != table.cols())
    throw InvalidInput("prior has shape " + std::to_string(prior.rows()) + "x" + std::to_string(prior.cols()) +
                       " but the table is " + std::to_string(table.rows()) + "x" + std::to_string(table.cols()));
}

// Weighted sum of the log-ratio field under the smoothed estimate, from
// precomputed pieces; lhs(N') = (N * lhs(0) + N' <L>_q) / (N + N') in exact
// arithmetic, but evaluated cell by cell as the definition reads.
double lhs_from_field(const CountTable& table, const LogRatioField& field, double n_prime, const ProbTable& prior) {
  const double denom = static_cast<double>(table.total()) + n_prime;
  double sum = 0.0;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const double smoothed = (static_cast<double>(table.cells()[i]) + n_prime * prior.cells()[i]) / denom;
    sum += smoothed * field.values[i];
  }
  return sum;
}

}  // namespace

SmoothedParams smoothed_params(const CountTable& table, double n_prime, const ProbTable& prior) {
  if (!(n_prime >= 0.0) || !std::isfinite(n_prime)) throw InvalidInput("n_prime must be finite and nonnegative");
  check_prior(table, prior);
  const double denom = static_cast<double>(table.total()) + n_prime;
  std::vector<double> cells(table.cells().size());
  double total = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cells[i] = (static_cast<double>(table.cells()[i]) + n_prime * prior.cells()[i]) / denom;
    total += cells[i];
  }
  // Renormalize only if rounding pushed the total outside the ProbTable tolerance.
  if (std::fabs(total - 1.0) > 1e-13)
    for (auto& p : cells) p /= total;
  return {ProbTable::from_flat(table.rows(), table.cols(), std::move(cells)), n_prime, prior};
}

LogRatioField log_ratio_field(const CountTable& table) {
  const auto rs = table.row_sums();
  const auto cs = table.col_sums();
  if (std::ranges::any_of(rs, [](auto c) { return c == 0; }) || std::ranges::any_of(cs, [](auto c) { return c == 0; }))
    throw InvalidInput("log_ratio_field: table has an empty row or column; drop unobserved states first");

  LogRatioField field;
  field.rows = table.rows();
  field.cols = table.cols();
  field.used_safe_joint = std::ranges::any_of(table.cells(), [](auto c) { return c == 0; });
  field.values.resize(table.cells().size());
  const auto n = static_cast<double>(table.total());
  for (std::size_t a = 0; a < table.rows(); ++a)
    for (std::size_t b = 0; b < table.cols(); ++b) {
      const auto c = table.at(a, b);
      const double joint = static_cast<double>(field.used_safe_joint ? std::max<std::int64_t>(c, 1) : c);
      field.values[a * field.cols + b] =
          std::log(joint * n / (static_cast<double>(rs[a]) * static_cast<double>(cs[b])));
    }
  return field;
}

double constraint_lhs(const CountTable& table, double n_prime, const ProbTable& prior) {
  if (!(n_prime >= 0.0)) throw InvalidInput("n_prime must be nonnegative");
  check_prior(table, prior);
  return lhs_from_field(table, log_ratio_field(table), n_prime, prior);
}

double constraint_rhs(const CountTable& table, DofMode mode) {
  return mi_plugin(table) - static_cast<double>(dof(table, mode)) / static_cast<double>(table.total());
}

double prior_log_ratio(const CountTable& table, const ProbTable& prior) {
  check_prior(table, prior);
  const auto field = log_ratio_field(table);
  double expectation = 0.0;
  for (std::size_t i = 0; i < field.values.size(); ++i) expectation += prior.cells()[i] * field.values[i];
  return expectation;
}

EssResult solve_ess(const CountTable& table, const ProbTable& prior, DofMode mode, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  check_prior(table, prior);
  const auto field = log_ratio_field(table);
  const double rhs = constraint_rhs(table, mode);
  const auto residual = [&](double n_prime) { return lhs_from_field(table, field, n_prime, prior) - rhs; };

  EssResult result;
  result.rhs = rhs;
  result.used_safe_joint = field.used_safe_joint;

  const double at_zero = residual(0.0);
  if (!(at_zero > 0.0))
    throw NoRootError("no positive equivalent sample size: rhs " + std::to_string(rhs) +
                      " is not below the unsmoothed lhs " + std::to_string(at_zero + rhs));

  double lo = 0.0;
  double hi = 1.0;
  while (residual(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > kBracketCap)
      throw NoRootError("no positive equivalent sample size: the constraint never reaches rhs " +
                        std::to_string(rhs) + " (dependence too weak for this prior)");
  }

  bool converged = false;
  for (int it = 1; it <= kMaxBisections && !converged; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(lo < mid && mid < hi))
      throw ConvergenceError("bisection bracket collapsed near N'=" + std::to_string(mid) +
                             " before the residual met the tolerance");
    const double r = residual(mid);
    result.iterations = it;
    if (std::fabs(r) <= tol) {
      result.n_prime_exact = mid;
      result.residual = r;
      converged = true;
    } else if (r > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!converged) throw ConvergenceError("bisection hit the iteration cap");

  try {
    result.n_prime_approx = approx_ess(table, prior, mode);
  } catch (const NoRootError&) {
    result.n_prime_approx = std::nan("");
  }
  return result;
}

double approx_ess(const CountTable& table, const ProbTable& prior, DofMode mode) {
  const double denom = mi_plugin(table) - prior_log_ratio(table, prior);
  if (!(denom > 0.0)) throw NoRootError("closed-form equivalent sample size has a non-positive denominator");
  return static_cast<double>(dof(table, mode)) / denom;
}

}  // namespace fairdep
