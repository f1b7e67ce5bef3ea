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

#include <algorithm>
#include <cmath>

#include "qsdprobe/ensemble.hpp"

using namespace qsdprobe;

namespace {

ModelParams probe(int n_qubits) {
  ModelParams p;
  p.n_qubits = n_qubits;
  p.omega_s = 1.0;
  p.omega_cav = 0.5;
  p.g = 0.5;
  p.gamma = 5.0;
  return p;
}

TrajectoryState constant_path(const TimeGrid& grid, const ComplexVector& v) {
  TrajectoryState s;
  s.grid = grid;
  s.psi = v.replicate(1, static_cast<Eigen::Index>(grid.size()));
  return s;
}

DensityMatrixSeries run(const ModelParams& p, const TimeGrid& grid, std::size_t K,
                        const ComplexVector& psi0, unsigned workers = 1, std::uint64_t seed = 3) {
  EnsembleOptions o;
  o.workers = workers;
  return run_ensemble(p, solve_coeffs(p, grid), model_kernels(p), psi0, grid, K, seed, o);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST_CASE("projector averaging") {
  const TimeGrid grid = TimeGrid::make(1.0, 0.5);
  ComplexVector v(2);
  v << 0.6, Complex(0.0, 0.8);
  const DensityMatrixSeries single = density_from_trajectories({constant_path(grid, v)});
  CHECK(single.rho[1].isApprox(v * v.adjoint()));
  CHECK(std::abs(single.rho[1].trace() - v.squaredNorm()) < 1e-15);

  const DensityMatrixSeries mixed = density_from_trajectories(
      {constant_path(grid, ops::basis_state(2, 0)), constant_path(grid, ops::basis_state(2, 1))});
  CHECK(mixed.rho[2].isApprox(0.5 * ops::identity(2)));
  CHECK(mixed.K == 2);
}

TEST_CASE("projector average equals a brute-force sum") {
  const TimeGrid grid = TimeGrid::make(1.0, 0.25);
  std::vector<TrajectoryState> paths;
  GaussianStream g(17);
  for (int n = 0; n < 300; ++n) {
    TrajectoryState s;
    s.grid = grid;
    s.psi.resize(4, static_cast<Eigen::Index>(grid.size()));
    for (Eigen::Index i = 0; i < s.psi.size(); ++i) s.psi.data()[i] = g.complex_normal();
    paths.push_back(std::move(s));
  }
  const DensityMatrixSeries series = density_from_trajectories(paths);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
    for (const auto& p : paths) sum += p.at(k) * p.at(k).adjoint();
    sum /= static_cast<double>(paths.size());
    CHECK((series.rho[k] - sum).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("noise-free unitary ensemble is pure with zero error") {
  ModelParams p = probe(1);
  p.g = 0.0;
  p.environment_layer = false;
  const TimeGrid grid = TimeGrid::make(2.0, 0.01);
  ComplexVector psi0(2);
  psi0 << 0.6, 0.8;
  const DensityMatrixSeries s = run(p, grid, 200, psi0);
  for (std::size_t k = 0; k < grid.size(); k += 20) {
    CHECK(std::abs(s.rho[k].trace() - 1.0) < 1e-12);
    CHECK(std::abs((s.rho[k] * s.rho[k]).trace() - 1.0) < 1e-12);
    CHECK(mc_error(s, k) < 1e-12);
  }
  CHECK(s.rejected == 0);
}

TEST_CASE("standard error needs two trajectories") {
  const TimeGrid grid = TimeGrid::make(1.0, 0.5);
  const DensityMatrixSeries one = density_from_trajectories({constant_path(grid, ops::basis_state(2, 0))});
  CHECK_THROWS_AS(mc_error(one, 0), InvalidArgument);
  const ModelParams p = probe(1);
  CHECK_THROWS_AS(run(p, grid, 1, ops::basis_state(2, 1)), InvalidArgument);
}

TEST_CASE("one-qubit ensemble errors at K = 10^4") {
  const TimeGrid grid = TimeGrid::make(10.0, 0.01);
  const DensityMatrixSeries s = run(probe(1), grid, 10000, ops::basis_state(2, 1));
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    worst = std::max({worst, s.entry_error[k](0, 0), s.entry_error[k](1, 1)});
  }
  CHECK(worst < 0.02);
  CHECK(s.K == 10000);
}

TEST_CASE("doubling K shrinks the error by sqrt 2") {
  const TimeGrid grid = TimeGrid::make(4.0, 0.02);
  ComplexVector psi0(2);
  psi0 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const DensityMatrixSeries a = run(probe(1), grid, 2000, psi0);
  const DensityMatrixSeries b = run(probe(1), grid, 4000, psi0, 1, 4);
  std::vector<double> ea(a.std_error.begin() + 1, a.std_error.end());
  std::vector<double> eb(b.std_error.begin() + 1, b.std_error.end());
  CHECK(median(eb) / median(ea) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("results do not depend on the worker count") {
  const TimeGrid grid = TimeGrid::make(2.0, 0.02);
  ComplexVector bell = ComplexVector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const DensityMatrixSeries a = run(probe(2), grid, 1500, bell, 1);
  const DensityMatrixSeries b = run(probe(2), grid, 1500, bell, 4);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(a.rho[k] == b.rho[k]);
    CHECK(a.entry_error[k] == b.entry_error[k]);
  }
  for (std::size_t blk = 0; blk < kJackknifeBlocks; ++blk) {
    CHECK(a.block_count[blk] == b.block_count[blk]);
    CHECK(a.block_rho[blk].back() == b.block_rho[blk].back());
  }
}

TEST_CASE("ensemble result is Hermitian") {
  const TimeGrid grid = TimeGrid::make(2.0, 0.02);
  ComplexVector bell = ComplexVector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const DensityMatrixSeries s = run(probe(2), grid, 500, bell);
  for (const auto& rho : s.rho) CHECK(is_hermitian(rho));
}

TEST_CASE("trajectory seeds") {
  CHECK(trajectory_seed(1, 5, 0) != trajectory_seed(1, 5, 1));
  CHECK(trajectory_seed(1, 5, 0) == derive_seed(1, 5, 0));
}

TEST_CASE("ensemble preconditions") {
  const TimeGrid grid = TimeGrid::make(1.0, 0.1);
  const ModelParams p = probe(1);
  const Coefficients c = solve_coeffs(p, TimeGrid::make(1.0, 0.05));
  CHECK_THROWS_AS(run_ensemble(p, c, model_kernels(p), ops::basis_state(2, 1), grid, 10, 1),
                  DimensionMismatch);
  CHECK_THROWS_AS(run(p, grid, 10, ops::basis_state(4, 1)), DimensionMismatch);
  CHECK_THROWS_AS(run(p, grid, 10, 3.0 * ops::basis_state(2, 1)), InvalidArgument);
}
