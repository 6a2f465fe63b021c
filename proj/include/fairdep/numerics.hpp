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

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace fairdep {

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// Regularized upper incomplete gamma Q(s,x) together with ln Q(s,x).
/// The log is computed directly (continued fraction in log space for
/// x >= s+1), so it stays finite long after q underflows to zero.
struct UpperGamma {
  double q = 1.0;
  double log_q = 0.0;
};

UpperGamma reg_gamma_upper(double s, double x);

/// Regularized lower incomplete gamma P(s,x) in plain double precision.
/// 1 - P(s,x) is the textbook survival computation that loses everything
/// once Q drops below machine epsilon; kept for comparison with the log path.
double reg_gamma_lower(double s, double x);

double std_normal_cdf(double z);

/// Quantile of the standard normal. Throws DomainError unless 0 < p < 1.
double inv_std_normal_cdf(double p);

/// Deterministic 64-bit pseudo random source.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The raw seed goes through a splitmix64 finalizer first so that
/// neighbouring seeds (0, 1, 2, ...) give unrelated streams. Uniform doubles
/// are built from the top 53 bits, never through std::uniform_real_distribution,
/// which keeps sequences identical across standard library implementations.
///
/// A stream is single-owner. Parallel work takes independent substreams.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Stream that is a pure function of (master_seed, index).
  static RandomStream substream(std::uint64_t master_seed, std::uint64_t index);

  /// Seed of the child stream `substream(seed(), index)`.
  [[nodiscard]] std::uint64_t child_seed(std::uint64_t index) const;

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Draws an index i with probability probs[i] using one uniform draw.
/// Throws InvalidInput on negative entries or a total further than 1e-12 from 1.
std::size_t sample_categorical(RandomStream& stream, std::span<const double> probs);

/// Validated cumulative table for repeated draws from the same distribution.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(std::span<const double> probs);

  std::size_t operator()(RandomStream& stream) const;

  [[nodiscard]] std::size_t size() const noexcept { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
};

}  // namespace fairdep
