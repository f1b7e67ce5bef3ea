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

#include "qsdprobe/coefficients.hpp"

#include <cmath>

#include "qsdprobe/rk4.hpp"

namespace qsdprobe {

double ModelParams::qubit_frequency(int which) const {
  if (which == 0) return omega_a.value_or(omega_s);
  if (which == 1) return omega_b.value_or(omega_s);
  throw InvalidArgument("qubit index must be 0 or 1");
}

double ModelParams::environment_amplitude() const {
  const double g2 = std::norm(g);
  if (g2 == 0.0) return 0.0;
  return gamma / (2.0 * g2);
}

double ModelParams::direct_kernel_amplitude() const {
  return direct_amplitude.value_or(0.5 * gamma);
}

CorrelationKernel ModelParams::probe_kernel() const {
  return CorrelationKernel::single_mode(g, omega_cav);
}

CorrelationKernel ModelParams::environment_kernel() const {
  if (!environment_layer || std::norm(g) == 0.0) return CorrelationKernel::zero();
  return CorrelationKernel::ornstein_uhlenbeck(environment_amplitude(), gamma);
}

CorrelationKernel ModelParams::detector_kernel() const {
  return CorrelationKernel::ornstein_uhlenbeck(direct_kernel_amplitude(), gamma);
}

void ModelParams::validate() const {
  if (n_qubits != 1 && n_qubits != 2) throw InvalidArgument("n_qubits must be 1 or 2");
  const double reals[] = {omega_s, omega_cav, g.real(), g.imag(), gamma, kappa1, kappa2};
  for (double v : reals) {
    if (!std::isfinite(v)) throw InvalidArgument("model parameters must be finite");
  }
  if ((environment_layer || cut_probe) && !(gamma > 0.0)) {
    throw InvalidArgument("gamma must be positive when the detector environment is active");
  }
  if (direct_amplitude && *direct_amplitude < 0.0) {
    throw InvalidArgument("direct_amplitude must be non-negative");
  }
  if (!(pole_ceiling > 0.0)) throw InvalidArgument("pole_ceiling must be positive");
}

KernelPair model_kernels(const ModelParams& params) {
  if (params.cut_probe) return {params.detector_kernel(), CorrelationKernel::zero()};
  return {params.probe_kernel(), params.environment_kernel()};
}

OneQubitSystem OneQubitSystem::make(const ModelParams& params, const KernelPair& kernels) {
  OneQubitSystem s;
  s.a_alpha = kernels.first.strength();
  s.lambda_alpha = kernels.first.rate();
  s.a_beta = kernels.second.strength();
  s.lambda_beta = kernels.second.rate();
  s.kappa = params.kappa1;
  s.omega = params.qubit_frequency(0);
  return s;
}

OneQubitSystem::State OneQubitSystem::rhs(const State& y) const {
  const Complex n = y[0];
  const Complex m = y[1];
  State d;
  d[0] = a_alpha * (kappa - kI * m) - lambda_alpha * n + kI * omega * n + kappa * n * n;
  d[1] = -kI * a_beta * n - lambda_beta * m + kI * omega * m + kappa * n * m;
  return d;
}

TwoQubitSystem TwoQubitSystem::make(const ModelParams& params, const KernelPair& kernels) {
  TwoQubitSystem s;
  s.a_alpha = kernels.first.strength();
  s.lambda_alpha = kernels.first.rate();
  s.a_beta = kernels.second.strength();
  s.lambda_beta = kernels.second.rate();
  s.kappa1 = params.kappa1;
  s.kappa2 = params.kappa2;
  s.omega_a = params.qubit_frequency(0);
  s.omega_b = params.qubit_frequency(1);
  const double half = params.o34_rotation == O34Rotation::AsPrinted ? 0.5 : 1.0;
  s.omega_j << s.omega_a, s.omega_b, half * s.omega_b, half * s.omega_a;
  return s;
}

namespace {

using Vec4 = Eigen::Vector4cd;

// Bilinear couplings of the j = 1..4 channels; `n` is either the n- or the m-family.
Vec4 bilinear(double k1, double k2, const Vec4& N, const Vec4& n) {
  Vec4 b;
  b[0] = k1 * N[0] * n[0] + k1 * N[3] * n[3] - k2 * N[0] * n[2] + k2 * N[2] * n[0] +
         k2 * N[2] * n[3] + k2 * N[3] * n[2];
  b[1] = -k1 * N[1] * n[3] + k1 * N[2] * n[3] + k1 * N[3] * n[1] + k1 * N[3] * n[2] +
         k2 * N[1] * n[1] + k2 * N[2] * n[2];
  b[2] = -k1 * N[1] * n[0] + k1 * N[2] * n[0] + k1 * N[3] * n[1] + k1 * N[3] * n[2] +
         k2 * N[1] * n[2] + k2 * N[2] * n[1];
  b[3] = k1 * N[0] * n[3] + k1 * N[3] * n[0] - k2 * N[0] * n[1] + k2 * N[2] * n[0] +
         k2 * N[2] * n[3] + k2 * N[3] * n[1];
  return b;
}

}  // namespace

TwoQubitBoundary TwoQubitSystem::boundary(const State& y) const {
  const Vec4 N = y.segment<4>(kN1);
  const Vec4 M = y.segment<4>(kM1);
  const double k1 = kappa1;
  const double k2 = kappa2;
  TwoQubitBoundary b;
  b.n5 = -2.0 * kI * (k1 * N[2] + k2 * N[3]) - kI * y[kAlphaM5] -
         2.0 * (M[0] * N[2] + M[1] * N[3] - M[2] * N[0] - M[3] * N[1]);
  b.n6 = -kI * y[kAlphaN5];
  b.m5 = -2.0 * kI * (k1 * M[2] + k2 * M[3]) - kI * y[kBetaM6];
  b.m6 = -kI * y[kBetaN6] - 2.0 * (N[0] * M[2] + N[1] * M[3] - N[2] * M[0] - N[3] * M[1]);
  b.rotation = kI * (omega_a + omega_b) + k1 * (N[0] + N[3]) + k2 * (N[1] + N[2]);
  b.shift_n = k1 * (N[0] - N[3]) + k2 * (N[1] - N[2]);
  b.shift_m = k1 * (M[0] - M[3]) + k2 * (M[1] - M[2]);
  return b;
}

Eigen::Matrix2cd TwoQubitSystem::coupling(const TwoQubitBoundary& b) const {
  Eigen::Matrix2cd k;
  k << -lambda_alpha + b.rotation + b.shift_n, -kI * a_alpha, b.shift_m - kI * a_beta,
      -lambda_beta + b.rotation;
  return k;
}

TwoQubitSystem::State TwoQubitSystem::rhs(const State& y) const {
  const Vec4 N = y.segment<4>(kN1);
  const Vec4 M = y.segment<4>(kM1);
  const TwoQubitBoundary b = boundary(y);
  const Eigen::Vector4d kappa_j(kappa1, kappa2, 0.0, 0.0);
  const Eigen::Vector4d kappa_cross(kappa2, kappa1, kappa1, kappa2);

  State d;
  d.segment<4>(kN1) = a_alpha * (kappa_j.cast<Complex>() - kI * M) - lambda_alpha * N +
                      kI * omega_j.cast<Complex>().cwiseProduct(N) + bilinear(kappa1, kappa2, N, N) -
                      (0.5 * kI * y[kAlphaN5]) * kappa_cross.cast<Complex>();
  d.segment<4>(kM1) = -kI * a_beta * N - lambda_beta * M +
                      kI * omega_j.cast<Complex>().cwiseProduct(M) + bilinear(kappa1, kappa2, N, M) -
                      (0.5 * kI * y[kBetaN6]) * kappa_cross.cast<Complex>();

  const Eigen::Matrix2cd k = coupling(b);
  const Eigen::Vector2cd alpha_pair(y[kAlphaN5], y[kAlphaM5]);
  const Eigen::Vector2cd beta_pair(y[kBetaN6], y[kBetaM6]);
  const Eigen::Vector2cd d_alpha =
      a_alpha * Eigen::Vector2cd(b.n5, b.m5) - lambda_alpha * alpha_pair + k * alpha_pair;
  const Eigen::Vector2cd d_beta =
      a_beta * Eigen::Vector2cd(b.n6, b.m6) - lambda_beta * beta_pair + k * beta_pair;
  d[kAlphaN5] = d_alpha[0];
  d[kAlphaM5] = d_alpha[1];
  d[kBetaN6] = d_beta[0];
  d[kBetaM6] = d_beta[1];
  return d;
}

template <int States>
typename CoefficientTable<States>::State CoefficientTable<States>::midpoint(std::size_t k) const {
  return hermite_midpoint<State>(at(k), slope(k), at(k + 1), slope(k + 1), grid.dt);
}

template struct CoefficientTable<2>;
template struct CoefficientTable<12>;

Complex TwoQubitCoeffs::N(int j, std::size_t k) const {
  if (j < 1 || j > 4) throw InvalidArgument("coefficient index must be 1..4");
  return values(static_cast<Eigen::Index>(k), TwoQubitSystem::kN1 + j - 1);
}

Complex TwoQubitCoeffs::M(int j, std::size_t k) const {
  if (j < 1 || j > 4) throw InvalidArgument("coefficient index must be 1..4");
  return values(static_cast<Eigen::Index>(k), TwoQubitSystem::kM1 + j - 1);
}

namespace {

template <int States, class System>
void integrate(const System& system, const TimeGrid& grid, double ceiling,
               CoefficientTable<States>& table) {
  using State = Eigen::Matrix<Complex, States, 1>;
  const auto rows = static_cast<Eigen::Index>(grid.size());
  table.grid = grid;
  table.values.resize(rows, States);
  table.derivs.resize(rows, States);
  State y = State::Zero();
  auto f = [&](int, const State& x) -> State { return system.rhs(x); };
  for (std::size_t k = 0;; ++k) {
    const double largest = y.cwiseAbs().maxCoeff();
    if (std::isnan(largest)) throw NonFiniteValue(grid.time(k), "coefficient solve");
    if (!(largest <= ceiling)) throw PoleEncountered(grid.time(k));
    table.values.row(static_cast<Eigen::Index>(k)) = y.transpose();
    const State slope = system.rhs(y);
    if (!slope.allFinite()) throw PoleEncountered(grid.time(k));
    table.derivs.row(static_cast<Eigen::Index>(k)) = slope.transpose();
    if (k == grid.n_steps) break;
    y = rk4_step<State>(f, y, grid.dt);
  }
}

}  // namespace

OneQubitCoeffs solve_one_qubit_coeffs(const ModelParams& params, const KernelPair& kernels,
                                      const TimeGrid& grid) {
  params.validate();
  OneQubitCoeffs c;
  c.system = OneQubitSystem::make(params, kernels);
  c.kernels = kernels;
  integrate(c.system, grid, params.pole_ceiling, c);
  return c;
}

OneQubitCoeffs solve_one_qubit_coeffs(const ModelParams& params, const TimeGrid& grid) {
  if (params.n_qubits != 1) throw InvalidArgument("solve_one_qubit_coeffs needs n_qubits = 1");
  return solve_one_qubit_coeffs(params, model_kernels(params), grid);
}

TwoQubitCoeffs solve_two_qubit_coeffs(const ModelParams& params, const KernelPair& kernels,
                                      const TimeGrid& grid) {
  params.validate();
  TwoQubitCoeffs c;
  c.system = TwoQubitSystem::make(params, kernels);
  c.kernels = kernels;
  integrate(c.system, grid, params.pole_ceiling, c);
  return c;
}

TwoQubitCoeffs solve_two_qubit_coeffs(const ModelParams& params, const TimeGrid& grid) {
  if (params.n_qubits != 2) throw InvalidArgument("solve_two_qubit_coeffs needs n_qubits = 2");
  return solve_two_qubit_coeffs(params, model_kernels(params), grid);
}

Coefficients solve_coeffs(const ModelParams& params, const TimeGrid& grid) {
  if (params.n_qubits == 1) return solve_one_qubit_coeffs(params, grid);
  return solve_two_qubit_coeffs(params, grid);
}

Coefficients direct_coupling_coeffs(const ModelParams& params, const CorrelationKernel& detector,
                                    const TimeGrid& grid) {
  const KernelPair kernels{detector, CorrelationKernel::zero()};
  if (params.n_qubits == 1) return solve_one_qubit_coeffs(params, kernels, grid);
  return solve_two_qubit_coeffs(params, kernels, grid);
}

const TimeGrid& coefficient_grid(const Coefficients& coeffs) {
  return std::visit([](const auto& c) -> const TimeGrid& { return c.grid; }, coeffs);
}

}  // namespace qsdprobe
