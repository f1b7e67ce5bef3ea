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

#include "qsdprobe/noise.hpp"

#include <cmath>
#include <numbers>

namespace qsdprobe {

TimeGrid TimeGrid::make(double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be positive");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidArgument("t_max must be positive");
  const double ratio = t_max / dt;
  const auto n = static_cast<std::size_t>(std::llround(ratio));
  if (n == 0 || std::abs(static_cast<double>(n) * dt - t_max) > 1e-12 * std::max(1.0, t_max)) {
    throw InvalidArgument("t_max is not an integer multiple of dt");
  }
  return TimeGrid{t_max, dt, n};
}

CorrelationKernel CorrelationKernel::single_mode(Complex g, double omega) {
  CorrelationKernel k;
  k.kind = KernelKind::SingleMode;
  k.g = g;
  k.omega = omega;
  return k;
}

CorrelationKernel CorrelationKernel::ornstein_uhlenbeck(double amplitude, double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("Ornstein-Uhlenbeck rate must be positive");
  if (amplitude < 0.0) throw InvalidArgument("Ornstein-Uhlenbeck amplitude must be non-negative");
  CorrelationKernel k;
  k.kind = KernelKind::OrnsteinUhlenbeck;
  k.gamma = gamma;
  k.amplitude = amplitude;
  return k;
}

double CorrelationKernel::strength() const {
  switch (kind) {
    case KernelKind::SingleMode:
      return std::norm(g);
    case KernelKind::OrnsteinUhlenbeck:
      return amplitude;
    case KernelKind::Zero:
      break;
  }
  return 0.0;
}

Complex CorrelationKernel::rate() const {
  switch (kind) {
    case KernelKind::SingleMode:
      return kI * omega;
    case KernelKind::OrnsteinUhlenbeck:
      return gamma;
    case KernelKind::Zero:
      break;
  }
  return 0.0;
}

Complex kernel_value(const CorrelationKernel& kernel, double t, double s) {
  const double tau = std::abs(t - s);
  const Complex forward = kernel.strength() * std::exp(-kernel.rate() * tau);
  return t >= s ? forward : std::conj(forward);
}

NoiseRealization NoiseRealization::zeros(const TimeGrid& grid) {
  NoiseRealization r;
  r.grid = grid;
  r.values = ComplexVector::Zero(static_cast<Eigen::Index>(grid.size()));
  return r;
}

Complex NoiseRealization::midpoint(std::size_t k) const {
  if (analytic) return amplitude * std::exp(kI * (omega * (grid.time(k) + 0.5 * grid.dt)));
  return 0.5 * ((*this)[k] + (*this)[k + 1]);
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::uint64_t channel) {
  return splitmix64(splitmix64(splitmix64(master) ^ index) ^ (channel * 0xd1b54a32d192ed03ULL));
}

double GaussianStream::uniform() {
  // (0, 1]: never returns zero, so the logarithm below is finite.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex GaussianStream::complex_normal() {
  const double x = normal();
  const double y = normal();
  return Complex(x, y) * std::numbers::sqrt2 * 0.5;
}

NoiseRealization sample_cavity_noise(const CorrelationKernel& kernel, const TimeGrid& grid,
                                      std::uint64_t seed) {
  if (kernel.kind != KernelKind::SingleMode) {
    throw InvalidArgument("sample_cavity_noise needs a single-mode kernel");
  }
  GaussianStream rng(seed);
  const Complex z = rng.complex_normal();
  NoiseRealization r = NoiseRealization::zeros(grid);
  r.seed = seed;
  r.analytic = true;
  r.amplitude = -kI * kernel.g * std::conj(z);
  r.omega = kernel.omega;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    r.values[static_cast<Eigen::Index>(k)] = r.amplitude * std::exp(kI * (r.omega * grid.time(k)));
  }
  return r;
}

NoiseRealization sample_ou_noise(const CorrelationKernel& kernel, const TimeGrid& grid,
                                 std::uint64_t seed) {
  if (kernel.kind != KernelKind::OrnsteinUhlenbeck) {
    throw InvalidArgument("sample_ou_noise needs an Ornstein-Uhlenbeck kernel");
  }
  if (kernel.gamma * grid.dt > 10.0) {
    throw InvalidArgument("grid too coarse for the Ornstein-Uhlenbeck rate (gamma * dt > 10)");
  }
  GaussianStream rng(seed);
  NoiseRealization r = NoiseRealization::zeros(grid);
  r.seed = seed;
  const double c = kernel.amplitude;
  const double decay = std::exp(-kernel.gamma * grid.dt);
  const double innovation = std::sqrt(c * (1.0 - decay * decay));
  Complex y = std::sqrt(c) * rng.complex_normal();
  r.values[0] = y;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    y = decay * y + innovation * rng.complex_normal();
    r.values[static_cast<Eigen::Index>(k)] = y;
  }
  return r;
}

NoiseRealization sample_noise(const CorrelationKernel& kernel, const TimeGrid& grid,
                              std::uint64_t seed) {
  switch (kernel.kind) {
    case KernelKind::SingleMode:
      return sample_cavity_noise(kernel, grid, seed);
    case KernelKind::OrnsteinUhlenbeck:
      return sample_ou_noise(kernel, grid, seed);
    case KernelKind::Zero:
      break;
  }
  NoiseRealization r = NoiseRealization::zeros(grid);
  r.seed = seed;
  return r;
}

namespace {

template <class Sample>
CorrelationEstimate estimate(const std::vector<NoiseRealization>& paths, std::size_t i,
                             std::size_t j, Sample sample) {
  if (paths.size() < 2) throw InvalidArgument("correlation estimate needs at least two paths");
  const TimeGrid& grid = paths.front().grid;
  if (i >= grid.size() || j >= grid.size()) throw InvalidArgument("grid index out of range");
  Complex sum = 0.0;
  for (const auto& p : paths) {
    if (!(p.grid == grid)) throw DimensionMismatch("noise paths live on different grids");
    sum += sample(p);
  }
  const double n = static_cast<double>(paths.size());
  const Complex mean = sum / n;
  double var = 0.0;
  for (const auto& p : paths) var += std::norm(sample(p) - mean);
  var /= (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

}  // namespace

CorrelationEstimate empirical_correlation(const std::vector<NoiseRealization>& paths,
                                          std::size_t i, std::size_t j) {
  return estimate(paths, i, j,
                  [=](const NoiseRealization& p) { return std::conj(p[i]) * p[j]; });
}

CorrelationEstimate empirical_pair_moment(const std::vector<NoiseRealization>& paths,
                                          std::size_t i, std::size_t j) {
  return estimate(paths, i, j,
                  [=](const NoiseRealization& p) { return std::conj(p[i]) * std::conj(p[j]); });
}

}  // namespace qsdprobe
