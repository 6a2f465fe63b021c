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

#include "fairdep/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fairdep/error.hpp"

namespace fairdep {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxGammaIterations = 1000000;

// Below this the argument is shifted up with Gamma(x+1) = x Gamma(x).
constexpr double kStirlingFloor = 15.0;

double stirling_log_gamma(double x) {
  // Asymptotic series in 1/x; at x >= 15 the first omitted term is < 1e-18.
  constexpr double c[] = {1.0 / 12.0,         -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
                          1.0 / 1188.0, -691.0 / 360360.0,  1.0 / 156.0};
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  for (int k = 6; k >= 0; --k) series = series * inv2 + c[k];
  series *= inv;
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

double lower_series(double s, double x) {
  // sum_{n>=0} x^n / (s (s+1) ... (s+n))
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n < kMaxGammaIterations; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) return sum;
  }
  throw ConvergenceError("incomplete gamma series did not converge");
}

double upper_continued_fraction(double s, double x) {
  // Modified Lentz evaluation of the continued fraction for Gamma(s,x) e^x x^-s.
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxGammaIterations; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) return h;
  }
  throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

void check_gamma_args(double s, double x) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("incomplete gamma: s must be positive");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma: x must be nonnegative");
}

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
  if (std::isinf(x)) return x;
  if (x >= kStirlingFloor) return stirling_log_gamma(x);
  double shifted = x;
  double product = 1.0;
  while (shifted < kStirlingFloor) {
    product *= shifted;
    shifted += 1.0;
  }
  return stirling_log_gamma(shifted) - std::log(product);
}

UpperGamma reg_gamma_upper(double s, double x) {
  check_gamma_args(s, x);
  if (x == 0.0) return {1.0, 0.0};
  if (std::isinf(x)) return {0.0, -std::numeric_limits<double>::infinity()};
  const double log_prefactor = s * std::log(x) - x - log_gamma(s);
  if (x < s + 1.0) {
    const double p = std::exp(log_prefactor + std::log(lower_series(s, x)));
    return {1.0 - p, std::log1p(-p)};
  }
  const double log_q = log_prefactor + std::log(upper_continued_fraction(s, x));
  return {std::exp(log_q), log_q};
}

double reg_gamma_lower(double s, double x) {
  check_gamma_args(s, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double log_prefactor = s * std::log(x) - x - log_gamma(s);
  if (x < s + 1.0) return std::exp(log_prefactor + std::log(lower_series(s, x)));
  return 1.0 - std::exp(log_prefactor) * upper_continued_fraction(s, x);
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double inv_std_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("inv_std_normal_cdf: p must lie in (0,1)");

  // Acklam's rational approximation (relative error 1.15e-9) ...
  constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                          1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                          6.680131188771972e+01,  -1.328068155288572e+01};
  constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                          -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                          3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double z;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    z = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    z = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // ... refined by one Halley step on the erfc-based CDF.
  const double e = std_normal_cdf(z) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * z * z);
  return z - u / (1.0 + 0.5 * z * u);
}

std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return splitmix64(master_seed ^ splitmix64(index ^ 0x6a09e667f3bcc909ULL));
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

RandomStream RandomStream::substream(std::uint64_t master_seed, std::uint64_t index) {
  return RandomStream(mix_seed(master_seed, index));
}

std::uint64_t RandomStream::child_seed(std::uint64_t index) const { return mix_seed(seed_, index); }

CategoricalSampler::CategoricalSampler(std::span<const double> probs) {
  if (probs.empty()) throw InvalidInput("categorical distribution is empty");
  cumulative_.reserve(probs.size());
  double total = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0) || !std::isfinite(probs[i]))
      throw InvalidInput("categorical probabilities must be finite and nonnegative");
    if (probs[i] > 0.0) last_positive = i;
    total += probs[i];
    cumulative_.push_back(total);
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw InvalidInput("categorical probabilities must sum to 1 (got " + std::to_string(total) + ")");
  for (std::size_t i = last_positive; i < cumulative_.size(); ++i) cumulative_[i] = 1.0;
}

std::size_t CategoricalSampler::operator()(RandomStream& stream) const {
  const double u = stream.next_double();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<std::size_t>(it - cumulative_.begin());
}

std::size_t sample_categorical(RandomStream& stream, std::span<const double> probs) {
  return CategoricalSampler(probs)(stream);
}

}  // namespace fairdep
