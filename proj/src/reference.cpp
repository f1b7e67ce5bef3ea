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

#include "qsdprobe/reference.hpp"

#include <Eigen/SparseCore>

#include <cmath>

#include "qsdprobe/rk4.hpp"

namespace qsdprobe {

namespace {

DensityMatrixSeries deterministic_series(const TimeGrid& grid, std::vector<ComplexMatrix> rho) {
  DensityMatrixSeries out;
  out.grid = grid;
  const Eigen::Index dim = rho.front().rows();
  out.rho = std::move(rho);
  out.entry_error.assign(out.rho.size(), Eigen::MatrixXd::Zero(dim, dim));
  out.std_error.assign(out.rho.size(), 0.0);
  return out;
}

void check_density(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols()) throw DimensionMismatch("density matrix must be square");
  if (!is_hermitian(rho, 1e-10)) throw InvalidArgument("density matrix must be Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw InvalidArgument("density matrix must have trace 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho);
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw InvalidArgument("density matrix must be positive semidefinite");
  }
}

}  // namespace

DensityMatrixSeries solve_one_qubit_master(const ModelParams& params, const OneQubitCoeffs& coeffs,
                                           const ComplexMatrix& rho0, const TimeGrid& grid) {
  if (!(coeffs.grid == grid)) throw DimensionMismatch("coefficient grid differs from the grid");
  if (rho0.rows() != 2) throw DimensionMismatch("one-qubit master equation needs a 2x2 state");
  check_density(rho0);
  using Mat = Eigen::Matrix2cd;
  const Mat sm = ops::sigma_minus();
  const Mat h = 0.5 * params.qubit_frequency(0) * ops::sigma_z();
  const Mat l = coeffs.system.kappa * sm;
  const Mat ld = l.adjoint();

  std::vector<ComplexMatrix> out;
  out.reserve(grid.size());
  Mat rho = rho0;
  for (std::size_t k = 0;; ++k) {
    out.emplace_back(rho);
    if (k == grid.n_steps) break;
    auto f = [&](int stage, const Mat& r) -> Mat {
      const Complex n = coeffs.stage(k, stage)[0];
      const Mat oz = n * sm;
      const Mat rozd = r * oz.adjoint();
      const Mat ozr = oz * r;
      return -kI * (h * r - r * h) + (l * rozd - rozd * l) - (ld * ozr - ozr * ld);
    };
    rho = rk4_step<Mat>(f, rho, grid.dt);
    if (!rho.allFinite()) throw NonFiniteValue(grid.time(k + 1), "master equation");
  }
  return deterministic_series(grid, std::move(out));
}

double jc_population(Complex g, double t) {
  const double c = std::cos(std::abs(g) * t);
  return c * c;
}

LindbladModel make_lindblad_model(const ModelParams& params, int fock_cutoff,
                                  std::optional<double> rate) {
  params.validate();
  if (fock_cutoff < 2) throw InvalidArgument("Fock cutoff must be at least 2");
  LindbladModel m;
  m.params = params;
  m.fock_cutoff = fock_cutoff;
  m.rate = rate.value_or(params.environment_layer
                             ? 2.0 * std::norm(params.g) * params.environment_amplitude() /
                                   params.gamma
                             : 0.0);
  if (m.rate < 0.0) throw InvalidArgument("cavity damping rate must be non-negative");

  const int nq = params.n_qubits;
  const Eigen::Index qdim = m.qubit_dimension();
  const ComplexMatrix a = ops::annihilation(fock_cutoff);
  const ComplexMatrix cav_id = ops::identity(fock_cutoff + 1);
  const ComplexMatrix q_id = ops::identity(qdim);
  ComplexMatrix hq = ComplexMatrix::Zero(qdim, qdim);
  ComplexMatrix lq = ComplexMatrix::Zero(qdim, qdim);
  if (nq == 1) {
    hq = 0.5 * params.qubit_frequency(0) * ops::sigma_z();
    lq = params.kappa1 * ops::sigma_minus();
  } else {
    hq = 0.5 * params.qubit_frequency(0) * ops::on_qubit(ops::sigma_z(), 0) +
         0.5 * params.qubit_frequency(1) * ops::on_qubit(ops::sigma_z(), 1);
    lq = params.kappa1 * ops::on_qubit(ops::sigma_minus(), 0) +
         params.kappa2 * ops::on_qubit(ops::sigma_minus(), 1);
  }
  const ComplexMatrix big_a = tensor_product(q_id, a);
  const ComplexMatrix big_l = tensor_product(lq, cav_id);
  m.annihilation = big_a;
  m.hamiltonian = tensor_product(hq, cav_id) + params.g * big_l * big_a.adjoint() +
                  std::conj(params.g) * big_l.adjoint() * big_a +
                  params.omega_cav * big_a.adjoint() * big_a;
  return m;
}

std::vector<ComplexMatrix> integrate_lindblad(const LindbladModel& model,
                                              const ComplexMatrix& rho0, const TimeGrid& grid) {
  const Eigen::Index dim = model.dimension();
  if (rho0.rows() != dim || rho0.cols() != dim) {
    throw DimensionMismatch("initial state does not match the qubit-cavity space");
  }
  const ComplexMatrix& a = model.annihilation;
  const ComplexMatrix heff =
      model.hamiltonian - (0.5 * kI * model.rate) * (a.adjoint() * a);
  const ComplexMatrix heff_dag = heff.adjoint();
  const Eigen::SparseMatrix<Complex> a_sparse = a.sparseView();
  const Eigen::SparseMatrix<Complex> ad_sparse = a.adjoint().sparseView();

  const double bound = heff.cwiseAbs().rowwise().sum().maxCoeff() + model.rate * model.fock_cutoff;
  const int substeps = std::max(1, static_cast<int>(std::ceil(grid.dt * bound / 0.5)));
  const double h = grid.dt / substeps;

  auto f = [&](int, const ComplexMatrix& r) -> ComplexMatrix {
    ComplexMatrix d = -kI * (heff * r - r * heff_dag);
    if (model.rate != 0.0) d += model.rate * (ComplexMatrix(a_sparse * r) * ad_sparse);
    return d;
  };
  std::vector<ComplexMatrix> out;
  out.reserve(grid.size());
  ComplexMatrix rho = rho0;
  for (std::size_t k = 0;; ++k) {
    out.push_back(rho);
    if (k == grid.n_steps) break;
    for (int s = 0; s < substeps; ++s) rho = rk4_step<ComplexMatrix>(f, rho, h);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    if (!rho.allFinite()) throw NonFiniteValue(grid.time(k + 1), "Lindblad solver");
  }
  return out;
}

namespace {

std::vector<ComplexMatrix> reduced_run(const LindbladModel& model, const ComplexMatrix& qrho0,
                                       const TimeGrid& grid) {
  const int ncav = model.fock_cutoff + 1;
  ComplexMatrix vac = ComplexMatrix::Zero(ncav, ncav);
  vac(0, 0) = 1.0;
  const auto full = integrate_lindblad(model, tensor_product(qrho0, vac), grid);
  std::vector<ComplexMatrix> out;
  out.reserve(full.size());
  for (const auto& r : full) out.push_back(partial_trace(r, model.qubit_dimension(), ncav));
  return out;
}

}  // namespace

LindbladResult solve_lindblad_oracle(const LindbladModel& model, const ComplexMatrix& qubit_rho0,
                                     const TimeGrid& grid, double cutoff_tolerance) {
  if (qubit_rho0.rows() != model.qubit_dimension()) {
    throw DimensionMismatch("initial qubit state does not match the model");
  }
  check_density(qubit_rho0);
  auto coarse = reduced_run(model, qubit_rho0, grid);
  const LindbladModel fine_model = make_lindblad_model(model.params, 2 * model.fock_cutoff, model.rate);
  const auto fine = reduced_run(fine_model, qubit_rho0, grid);
  double change = 0.0;
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    change = std::max(change, (coarse[k] - fine[k]).cwiseAbs().maxCoeff());
  }
  if (change > cutoff_tolerance) {
    throw CutoffNotConverged("Fock cutoff " + std::to_string(model.fock_cutoff) +
                             " not converged (change " + std::to_string(change) + ")");
  }
  LindbladResult out;
  out.qubits = deterministic_series(grid, std::move(coarse));
  out.cutoff_change = change;
  return out;
}

}  // namespace qsdprobe
