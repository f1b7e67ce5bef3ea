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

#include "qsdprobe/ensemble.hpp"

namespace qsdprobe {

/// One-qubit master equation d rho = -i[H_s, rho] + [L, rho Oz^dag] - [L^dag, Oz rho]
/// with Oz = N(t) sigma_-; deterministic RK4, std_error set to zero.
DensityMatrixSeries solve_one_qubit_master(const ModelParams& params, const OneQubitCoeffs& coeffs,
                                           const ComplexMatrix& rho0, const TimeGrid& grid);

/// Resonant vacuum Rabi oscillation cos^2(|g| t).
double jc_population(Complex g, double t);

/// Qubits coupled to a damped cavity mode, on the qubits (x) Fock(0..cutoff) space:
/// H = sum (w/2) sigma_z + g L a^dag + g* L^dag a + w_cav a^dag a, collapse sqrt(rate) a.
struct LindbladModel {
  ModelParams params;
  double rate = 1.0;
  int fock_cutoff = 10;
  ComplexMatrix hamiltonian;
  ComplexMatrix annihilation;

  int qubit_dimension() const { return params.n_qubits == 1 ? 2 : 4; }
  int dimension() const { return qubit_dimension() * (fock_cutoff + 1); }
};

/// Builds the model. The default rate is 2 |g|^2 times the integral of the environment
/// kernel, which is 1 for c = gamma / (2 |g|^2).
LindbladModel make_lindblad_model(const ModelParams& params, int fock_cutoff = 10,
                                  std::optional<double> rate = std::nullopt);

struct LindbladResult {
  /// Qubit density matrices after tracing out the cavity.
  DensityMatrixSeries qubits;
  /// Largest qubit-matrix entry change when the cutoff is doubled.
  double cutoff_change = 0.0;
};

/// Integrates the Lindblad equation from rho0 (x) |vac><vac| and checks convergence against
/// a doubled cutoff; throws CutoffNotConverged if the qubit matrices move by more than
/// `cutoff_tolerance`.
LindbladResult solve_lindblad_oracle(const LindbladModel& model, const ComplexMatrix& qubit_rho0,
                                     const TimeGrid& grid, double cutoff_tolerance = 1e-4);

/// Full product-space trajectory without the cutoff check.
std::vector<ComplexMatrix> integrate_lindblad(const LindbladModel& model,
                                              const ComplexMatrix& rho0, const TimeGrid& grid);

}  // namespace qsdprobe
