// Copyright 2026 The qsdprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qsdprobe/operators.hpp"

namespace qsdprobe {

/// Uniform grid t_k = k dt, k = 0..n_steps.
struct TimeGrid {
  double t_max = 0.0;
  double dt = 0.0;
  std::size_t n_steps = 0;

  static TimeGrid make(double t_max, double dt);

  double time(std::size_t k) const { return static_cast<double>(k) * dt; }
  std::size_t size() const { return n_steps + 1; }
  bool operator==(const TimeGrid& other) const {
    return n_steps == other.n_steps && dt == other.dt;
  }
};

enum class KernelKind { Zero, SingleMode, OrnsteinUhlenbeck };

/// Two-time correlation a * exp(-lambda (t - s)) for t >= s, Hermitian for t < s.
/// SingleMode: a = |g|^2, lambda = i omega.  OrnsteinUhlenbeck: a = c, lambda = gamma.
struct CorrelationKernel {
  KernelKind kind = KernelKind::Zero;
  Complex g{0.0, 0.0};
  double omega = 0.0;
  double gamma = 0.0;
  double amplitude = 0.0;

  static CorrelationKernel zero() { return {}; }
  static CorrelationKernel single_mode(Complex g, double omega);
  static CorrelationKernel ornstein_uhlenbeck(double amplitude, double gamma);

  /// Equal-time value a.
  double strength() const;
  /// Decay constant lambda.
  Complex rate() const;
  bool is_zero() const { return kind == KernelKind::Zero || strength() == 0.0; }
};

Complex kernel_value(const CorrelationKernel& kernel, double t, double s);

/// One sampled path of z*_t or y*_t on a grid.
struct NoiseRealization {
  TimeGrid grid;
  ComplexVector values;
  std::uint64_t seed = 0;
  /// Single-mode paths are exactly amplitude * exp(i omega t); midpoints use that form.
  bool analytic = false;
  Complex amplitude{0.0, 0.0};
  double omega = 0.0;

  static NoiseRealization zeros(const TimeGrid& grid);

  Complex operator[](std::size_t k) const { return values[static_cast<Eigen::Index>(k)]; }
  /// Value at t_k + dt/2.
  Complex midpoint(std::size_t k) const;
};

/// Derives an independent 64-bit stream seed from (master, index, channel).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::uint64_t channel);

/// Standard normal variates with a platform-independent transform.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
  double normal();
  /// Complex Gaussian with E|w|^2 = 1 and E w^2 = 0.
  Complex complex_normal();

 private:
  double uniform();
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

NoiseRealization sample_cavity_noise(const CorrelationKernel& kernel, const TimeGrid& grid,
                                      std::uint64_t seed);
NoiseRealization sample_ou_noise(const CorrelationKernel& kernel, const TimeGrid& grid,
                                 std::uint64_t seed);
/// Dispatches on the kernel kind; Zero kernels give an all-zero path.
NoiseRealization sample_noise(const CorrelationKernel& kernel, const TimeGrid& grid,
                              std::uint64_t seed);

struct CorrelationEstimate {
  Complex mean;
  double std_error;
};

/// Estimates M[z_{t_i} z*_{t_j}] from stored z* paths.
CorrelationEstimate empirical_correlation(const std::vector<NoiseRealization>& paths,
                                          std::size_t i, std::size_t j);
/// Estimates the non-conjugated moment M[z_{t_i} z_{t_j}], which vanishes for these processes.
CorrelationEstimate empirical_pair_moment(const std::vector<NoiseRealization>& paths,
                                          std::size_t i, std::size_t j);

}  // namespace qsdprobe
