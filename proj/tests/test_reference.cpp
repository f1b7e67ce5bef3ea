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

#include <algorithm>
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qsdprobe/reference.hpp"

using namespace qsdprobe;

namespace {

ModelParams resonant(bool environment) {
  ModelParams p;
  p.n_qubits = 1;
  p.omega_s = 1.0;
  p.omega_cav = 1.0;
  p.g = 0.5;
  p.environment_layer = environment;
  return p;
}

ModelParams probe(double gamma) {
  ModelParams p;
  p.n_qubits = 1;
  p.omega_s = 1.0;
  p.omega_cav = 0.5;
  p.g = 0.5;
  p.gamma = gamma;
  return p;
}

ComplexMatrix excited() { return ops::basis_state(2, 1) * ops::basis_state(2, 1).adjoint(); }

}  // namespace

TEST_CASE("vacuum Rabi closed form") {
  CHECK(jc_population(0.5, 0.0) == 1.0);
  CHECK(jc_population(0.5, std::numbers::pi) == doctest::Approx(0.0));
  CHECK(jc_population(0.5, std::numbers::pi / 2.0) == doctest::Approx(0.5));
  CHECK(jc_population(Complex(0.0, 0.5), std::numbers::pi / 2.0) == doctest::Approx(0.5));
}

TEST_CASE("master equation with N = 0 keeps populations") {
  ModelParams p = resonant(false);
  p.g = 0.0;
  const TimeGrid grid = TimeGrid::make(3.0, 0.01);
  ComplexMatrix rho0(2, 2);
  rho0 << 0.3, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.7;
  const auto s = solve_one_qubit_master(p, solve_one_qubit_coeffs(p, grid), rho0, grid);
  for (std::size_t k = 0; k < grid.size(); k += 30) {
    CHECK(s.rho[k](1, 1).real() == doctest::Approx(0.7));
    CHECK(std::abs(s.rho[k](0, 1)) == doctest::Approx(std::abs(rho0(0, 1))));
  }
}

TEST_CASE("ground state is stationary under the master equation") {
  const ModelParams p = probe(5.0);
  const TimeGrid grid = TimeGrid::make(5.0, 0.01);
  const ComplexMatrix rho0 = ops::basis_state(2, 0) * ops::basis_state(2, 0).adjoint();
  const auto s = solve_one_qubit_master(p, solve_one_qubit_coeffs(p, grid), rho0, grid);
  for (const auto& rho : s.rho) CHECK((rho - rho0).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("master equation rejects invalid states") {
  const ModelParams p = probe(5.0);
  const TimeGrid grid = TimeGrid::make(1.0, 0.01);
  const OneQubitCoeffs c = solve_one_qubit_coeffs(p, grid);
  ComplexMatrix bad(2, 2);
  bad << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS(solve_one_qubit_master(p, c, bad, grid), InvalidArgument);
  CHECK_THROWS_AS(solve_one_qubit_master(p, c, 2.0 * excited(), grid), InvalidArgument);
  CHECK_THROWS_AS(solve_one_qubit_master(p, c, ops::identity(4) / 4.0, grid), DimensionMismatch);
}

TEST_CASE("probe decay is slower than direct coupling") {
  const TimeGrid grid = TimeGrid::make(10.0, 0.01);
  ModelParams p = probe(5.0);
  const auto probe_run = solve_one_qubit_master(p, solve_one_qubit_coeffs(p, grid), excited(), grid);
  p.cut_probe = true;
  const auto direct = solve_one_qubit_master(p, solve_one_qubit_coeffs(p, grid), excited(), grid);
  double avg_probe = 0.0, avg_direct = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    avg_probe += probe_run.rho[k](1, 1).real();
    avg_direct += direct.rho[k](1, 1).real();
  }
  CHECK(avg_probe > avg_direct);
}

TEST_CASE("weakly damped probe revives the population") {
  const TimeGrid grid = TimeGrid::make(10.0, 0.01);
  const ModelParams p = probe(0.5);
  const auto run = solve_one_qubit_master(p, solve_one_qubit_coeffs(p, grid), excited(), grid);
  double low = 1.0, rise = 0.0;
  for (const auto& rho : run.rho) {
    const double pop = rho(1, 1).real();
    low = std::min(low, pop);
    rise = std::max(rise, pop - low);
  }
  CHECK(rise > 0.2);
}

TEST_CASE("master equation is fourth order in dt") {
  const ModelParams p = probe(5.0);
  auto final_population = [&](double dt) {
    const TimeGrid grid = TimeGrid::make(4.0, dt);
    return solve_one_qubit_master(p, solve_one_qubit_coeffs(p, grid), excited(), grid)
        .rho.back()(1, 1)
        .real();
  };
  const double a = final_population(0.04), b = final_population(0.02), c = final_population(0.01);
  CHECK(std::abs(a - b) / std::abs(b - c) == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("agreement chain without damping") {
  const ModelParams p = resonant(false);
  const TimeGrid grid = TimeGrid::make(2.4, 0.01);
  const auto lind = solve_lindblad_oracle(make_lindblad_model(p, 10, 0.0), excited(), grid);
  const auto master = solve_one_qubit_master(p, solve_one_qubit_coeffs(p, grid), excited(), grid);
  for (std::size_t k = 0; k < grid.size(); k += 10) {
    const double exact = jc_population(p.g, grid.time(k));
    CHECK(std::abs(lind.qubits.rho[k](1, 1).real() - exact) < 1e-6);
    CHECK(std::abs(master.rho[k](1, 1).real() - exact) < 1e-6);
  }
  CHECK(lind.cutoff_change < 1e-4);
}

TEST_CASE("Lindblad model construction") {
  const LindbladModel m = make_lindblad_model(probe(5.0));
  CHECK(m.rate == doctest::Approx(1.0));
  CHECK(m.dimension() == 22);
  CHECK(is_hermitian(m.hamiltonian, 1e-12));
  CHECK(make_lindblad_model(resonant(false)).rate == 0.0);
  CHECK_THROWS_AS(make_lindblad_model(probe(5.0), 1), InvalidArgument);
  ModelParams two = probe(5.0);
  two.n_qubits = 2;
  CHECK(make_lindblad_model(two, 4).dimension() == 20);
}

TEST_CASE("uncoupled Lindblad model is frozen") {
  ModelParams p = probe(5.0);
  p.g = 0.0;
  const LindbladModel m = make_lindblad_model(p, 4, 1.0);
  const TimeGrid grid = TimeGrid::make(2.0, 0.01);
  const auto r = solve_lindblad_oracle(m, excited(), grid);
  for (const auto& rho : r.qubits.rho) CHECK((rho - excited()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Lindblad solver preserves trace, Hermiticity and positivity") {
  ModelParams p = probe(5.0);
  p.n_qubits = 2;
  const LindbladModel m = make_lindblad_model(p, 4);
  const TimeGrid grid = TimeGrid::make(5.0, 0.01);
  ComplexVector bell = ComplexVector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const ComplexMatrix q0 = bell * bell.adjoint();
  const ComplexMatrix full0 =
      tensor_product(q0, ops::basis_state(5, 0) * ops::basis_state(5, 0).adjoint());
  const auto run = integrate_lindblad(m, full0, grid);
  for (std::size_t k = 0; k < run.size(); k += 50) {
    const ComplexMatrix& rho = run[k];
    CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho, Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("excitation-conserving dynamics converge at the smallest cutoff") {
  ModelParams p = probe(5.0);
  p.n_qubits = 2;
  const LindbladModel m = make_lindblad_model(p, 2);
  const ComplexMatrix both = ops::basis_state(4, 3) * ops::basis_state(4, 3).adjoint();
  const auto r = solve_lindblad_oracle(m, both, TimeGrid::make(3.0, 0.01));
  CHECK(r.cutoff_change < 1e-10);
}
