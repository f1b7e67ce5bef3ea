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

#include <doctest.h>

#include <cmath>

#include "qsdprobe/noise.hpp"

using namespace qsdprobe;

namespace {

std::vector<NoiseRealization> draw(const CorrelationKernel& k, const TimeGrid& grid,
                                   std::size_t n, std::uint64_t master) {
  std::vector<NoiseRealization> paths;
  paths.reserve(n);
  for (std::size_t i = 0; i < n; ++i) paths.push_back(sample_noise(k, grid, derive_seed(master, i, 0)));
  return paths;
}

}  // namespace

TEST_CASE("time grid") {
  const TimeGrid g = TimeGrid::make(10.0, 0.01);
  CHECK(g.n_steps == 1000);
  CHECK(g.size() == 1001);
  CHECK(g.time(1000) == doctest::Approx(10.0));
  CHECK_THROWS(TimeGrid::make(1.0, 0.0));
  CHECK_THROWS(TimeGrid::make(-1.0, 0.1));
}

TEST_CASE("kernel values") {
  CHECK(kernel_value(CorrelationKernel::single_mode(1.0, 0.0), 0.3, 2.0) == Complex(1.0));
  const Complex v = kernel_value(CorrelationKernel::single_mode(0.5, 1.0), 2.0, 1.0);
  CHECK(std::abs(v - 0.25 * std::exp(-kI)) < 1e-15);
  CHECK(kernel_value(CorrelationKernel::ornstein_uhlenbeck(2.5, 5.0), 1.0, 1.0) == Complex(2.5));
  // Hermitian in the two times.
  const auto k = CorrelationKernel::single_mode(Complex(0.3, 0.2), 0.7);
  CHECK(std::abs(kernel_value(k, 0.2, 1.1) - std::conj(kernel_value(k, 1.1, 0.2))) < 1e-15);
  CHECK(kernel_value(CorrelationKernel::zero(), 1.0, 0.0) == Complex(0.0));
}

TEST_CASE("cavity noise") {
  const TimeGrid grid = TimeGrid::make(2.0, 0.05);
  const NoiseRealization zero = sample_cavity_noise(CorrelationKernel::single_mode(0.0, 1.0), grid, 3);
  CHECK(zero.values.cwiseAbs().maxCoeff() == 0.0);

  const NoiseRealization p = sample_cavity_noise(CorrelationKernel::single_mode(0.5, 1.0), grid, 3);
  const double modulus = std::abs(p[0]);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(std::abs(p[k]) == doctest::Approx(modulus));
  CHECK(std::abs(p.midpoint(4) - p.amplitude * std::exp(kI * 0.225)) < 1e-14);

  CHECK_THROWS_AS(sample_cavity_noise(CorrelationKernel::ornstein_uhlenbeck(1.0, 1.0), grid, 1),
                  InvalidArgument);
}

TEST_CASE("cavity correlation matches the kernel at (1, 0)") {
  const TimeGrid grid = TimeGrid::make(1.0, 0.5);
  const auto kernel = CorrelationKernel::single_mode(0.5, 1.0);
  const auto paths = draw(kernel, grid, 100000, 41);
  const CorrelationEstimate e = empirical_correlation(paths, 2, 0);
  CHECK(std::abs(e.mean - 0.25 * std::exp(-kI)) <= 5.0 * e.std_error);
  const CorrelationEstimate same = empirical_correlation(paths, 1, 1);
  CHECK(std::abs(same.mean - 0.25) <= 5.0 * same.std_error);
}

TEST_CASE("OU noise statistics") {
  const TimeGrid grid = TimeGrid::make(1.0, 0.04);
  const auto zero = sample_ou_noise(CorrelationKernel::ornstein_uhlenbeck(0.0, 5.0), grid, 8);
  CHECK(zero.values.cwiseAbs().maxCoeff() == 0.0);

  const auto kernel = CorrelationKernel::ornstein_uhlenbeck(0.9, 5.0);
  const auto paths = draw(kernel, grid, 100000, 43);
  const CorrelationEstimate var = empirical_correlation(paths, 10, 10);
  CHECK(std::abs(var.mean - 0.9) <= 5.0 * var.std_error);
  // |t - s| = 1 / gamma = 0.2 = 5 steps.
  const CorrelationEstimate lag = empirical_correlation(paths, 15, 10);
  CHECK(std::abs(lag.mean - 0.9 * std::exp(-1.0)) <= 5.0 * lag.std_error);
  const CorrelationEstimate pair = empirical_pair_moment(paths, 15, 10);
  CHECK(std::abs(pair.mean) <= 5.0 * pair.std_error);

  const auto half = draw(CorrelationKernel::ornstein_uhlenbeck(0.5, 5.0), grid, 20000, 47);
  const CorrelationEstimate e = empirical_correlation(half, 5, 0);
  CHECK(std::abs(e.mean - 0.5 * std::exp(-1.0)) <= 5.0 * e.std_error);

  CHECK_THROWS_AS(sample_ou_noise(CorrelationKernel::ornstein_uhlenbeck(1.0, 1000.0), grid, 1),
                  InvalidArgument);
}

TEST_CASE("estimator edge cases") {
  const TimeGrid grid = TimeGrid::make(1.0, 0.5);
  NoiseRealization one = NoiseRealization::zeros(grid);
  one.values.setConstant(1.0);
  const std::vector<NoiseRealization> paths(4, one);
  const CorrelationEstimate e = empirical_correlation(paths, 0, 2);
  CHECK(e.mean == Complex(1.0));
  CHECK(e.std_error == 0.0);
  CHECK_THROWS(empirical_correlation({one}, 0, 0));
}

TEST_CASE("seeds and streams are deterministic") {
  CHECK(derive_seed(1, 2, 0) == derive_seed(1, 2, 0));
  CHECK(derive_seed(1, 2, 0) != derive_seed(1, 2, 1));
  CHECK(derive_seed(1, 2, 0) != derive_seed(1, 3, 0));
  CHECK(derive_seed(1, 2, 0) != derive_seed(2, 2, 0));

  GaussianStream a(99), b(99);
  for (int i = 0; i < 10; ++i) CHECK(a.normal() == b.normal());

  GaussianStream g(5);
  double sum = 0.0, sq = 0.0;
  Complex pair = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const Complex w = g.complex_normal();
    sum += w.real();
    sq += std::norm(w);
    pair += w * w;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(pair / double(n)) < 0.01);
}

TEST_CASE("zero kernel gives zero paths") {
  const TimeGrid grid = TimeGrid::make(1.0, 0.1);
  const auto p = sample_noise(CorrelationKernel::zero(), grid, 1);
  CHECK(p.values.size() == 11);
  CHECK(p.values.cwiseAbs().maxCoeff() == 0.0);
}
