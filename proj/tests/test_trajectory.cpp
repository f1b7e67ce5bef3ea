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

#include "qsdprobe/trajectory.hpp"

using namespace qsdprobe;

namespace {

struct Paths {
  NoiseRealization z, y;
};

Paths draw(const ModelParams& p, const TimeGrid& grid, std::uint64_t seed) {
  const KernelPair k = model_kernels(p);
  return {sample_noise(k.first, grid, derive_seed(seed, 0, 0)),
          sample_noise(k.second, grid, derive_seed(seed, 0, 1))};
}

ModelParams probe(int n_qubits) {
  ModelParams p;
  p.n_qubits = n_qubits;
  p.omega_s = 1.0;
  p.omega_cav = 0.5;
  p.g = 0.5;
  p.gamma = 5.0;
  return p;
}

}  // namespace

TEST_CASE("uncoupled qubit evolves by its Hamiltonian") {
  ModelParams p = probe(1);
  p.g = 0.0;
  p.environment_layer = false;
  const TimeGrid grid = TimeGrid::make(3.0, 0.01);
  const Coefficients coeffs = solve_coeffs(p, grid);
  const Paths n = draw(p, grid, 1);
  const EffectiveGenerator gen = build_effective_generator(p, coeffs, n.z, n.y);
  const ComplexMatrix h = 0.5 * ops::sigma_z();
  for (std::size_t k : {std::size_t{0}, std::size_t{150}, std::size_t{300}}) {
    CHECK((gen.matrix(k) + kI * h).cwiseAbs().maxCoeff() < 1e-15);
  }
  const TrajectoryState s = run_trajectory(gen, ops::basis_state(2, 1), grid);
  for (std::size_t k = 0; k < grid.size(); k += 50) {
    const Complex expected = std::exp(-0.5 * kI * grid.time(k));
    CHECK(std::abs(s.at(k)[1] - expected) < 1e-9);
    CHECK(std::abs(s.at(k)[0]) == 0.0);
    CHECK(s.norm_squared(k) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("zero noise gives the master-equation drift") {
  const ModelParams p = probe(1);
  const TimeGrid grid = TimeGrid::make(2.0, 0.01);
  const OneQubitCoeffs coeffs = solve_one_qubit_coeffs(p, grid);
  const NoiseRealization zero = NoiseRealization::zeros(grid);
  const EffectiveGenerator gen = build_effective_generator(p, coeffs, zero, zero);
  const ComplexMatrix pm = ops::sigma_plus() * ops::sigma_minus();
  for (std::size_t k = 0; k < grid.size(); k += 40) {
    const ComplexMatrix expected = -0.5 * kI * ops::sigma_z() - coeffs.N(k) * pm;
    CHECK((gen.matrix(k) - expected).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("two-qubit generator restricted to B in ground matches one qubit") {
  ModelParams two = probe(2);
  two.kappa2 = 0.0;
  const ModelParams one = probe(1);
  const TimeGrid grid = TimeGrid::make(4.0, 0.01);
  const Coefficients c2 = solve_coeffs(two, grid);
  const Coefficients c1 = solve_coeffs(one, grid);
  const Paths n = draw(one, grid, 5);
  const EffectiveGenerator g2 = build_effective_generator(two, c2, n.z, n.y);
  const EffectiveGenerator g1 = build_effective_generator(one, c1, n.z, n.y);
  const int idx[2] = {0, 2};
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); k += 25) {
    const ComplexMatrix a = g2.matrix(k);
    const ComplexMatrix b = g1.matrix(k);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        // B in its ground state contributes the energy -omega_B / 2.
        const Complex shift = i == j ? 0.5 * kI : 0.0;
        worst = std::max(worst, std::abs(a(idx[i], idx[j]) - b(i, j) - shift));
      }
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("zero generator keeps the state") {
  ModelParams p = probe(1);
  p.g = 0.0;
  p.environment_layer = false;
  p.omega_s = 0.0;
  const TimeGrid grid = TimeGrid::make(1.0, 0.1);
  const NoiseRealization zero = NoiseRealization::zeros(grid);
  const EffectiveGenerator gen = build_effective_generator(p, solve_coeffs(p, grid), zero, zero);
  ComplexVector psi0(2);
  psi0 << 0.6, Complex(0.0, 0.8);
  const TrajectoryState s = run_trajectory(gen, psi0, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(s.at(k) == psi0);
}

TEST_CASE("trajectory norm converges under step halving") {
  ModelParams p = probe(1);
  p.omega_cav = 1.0;
  p.environment_layer = false;
  const TimeGrid coarse = TimeGrid::make(2.0, 0.01);
  const TimeGrid fine = TimeGrid::make(2.0, 0.005);
  auto run = [&](const TimeGrid& grid) {
    const Paths n = draw(p, grid, 77);
    const EffectiveGenerator gen = build_effective_generator(p, solve_coeffs(p, grid), n.z, n.y);
    return run_trajectory(gen, ops::basis_state(2, 1), grid);
  };
  const TrajectoryState a = run(coarse);
  const TrajectoryState b = run(fine);
  for (std::size_t k = 0; k < coarse.size(); k += 20) {
    CHECK(std::abs(a.norm_squared(k) - b.norm_squared(2 * k)) < 1e-8);
  }
}

TEST_CASE("two-qubit trajectory is finite and reproducible") {
  const ModelParams p = probe(2);
  const TimeGrid grid = TimeGrid::make(5.0, 0.01);
  const Coefficients c = solve_coeffs(p, grid);
  const Paths n = draw(p, grid, 9);
  const EffectiveGenerator gen = build_effective_generator(p, c, n.z, n.y);
  ComplexVector bell = ComplexVector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const TrajectoryState a = run_trajectory(gen, bell, grid);
  const TrajectoryState b = run_trajectory(gen, bell, grid);
  CHECK(a.psi.allFinite());
  CHECK(a.psi == b.psi);
  CHECK(a.z_seed == n.z.seed);
}

TEST_CASE("trajectory preconditions") {
  const ModelParams p = probe(1);
  const TimeGrid grid = TimeGrid::make(1.0, 0.01);
  const Coefficients c = solve_coeffs(p, grid);
  const NoiseRealization zero = NoiseRealization::zeros(grid);
  const EffectiveGenerator gen = build_effective_generator(p, c, zero, zero);
  CHECK_THROWS_AS(run_trajectory(gen, 2.0 * ops::basis_state(2, 1), grid), InvalidArgument);
  CHECK_THROWS_AS(run_trajectory(gen, ops::basis_state(4, 1), grid), DimensionMismatch);
  CHECK_THROWS_AS(run_trajectory(gen, ops::basis_state(2, 1), TimeGrid::make(2.0, 0.01)),
                  DimensionMismatch);
  const NoiseRealization other = NoiseRealization::zeros(TimeGrid::make(1.0, 0.02));
  CHECK_THROWS_AS(build_effective_generator(p, c, other, zero), DimensionMismatch);
}

TEST_CASE("non-finite states are reported with their time") {
  const ModelParams p = probe(1);
  const TimeGrid grid = TimeGrid::make(1.0, 0.01);
  const Coefficients c = solve_coeffs(p, grid);
  NoiseRealization huge = NoiseRealization::zeros(grid);
  huge.values.setConstant(Complex(std::nan(""), 0.0));
  const EffectiveGenerator gen = build_effective_generator(p, c, huge, NoiseRealization::zeros(grid));
  ComplexMatrix psi;
  ComplexVector start(2);
  start << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto failure = integrate_trajectory(gen, start, psi);
  REQUIRE(failure.has_value());
  CHECK(*failure == doctest::Approx(0.01));
  CHECK_THROWS_AS(run_trajectory(gen, start, grid), NonFiniteValue);
}
