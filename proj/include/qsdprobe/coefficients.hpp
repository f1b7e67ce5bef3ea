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

#include <optional>
#include <variant>

#include "qsdprobe/noise.hpp"

namespace qsdprobe {

/// Rotation frequency used for the sigma_z-dressed channels O3 and O4.
/// `Consistent` rotates them at the full qubit frequency; `AsPrinted` uses half of it.
enum class O34Rotation { Consistent, AsPrinted };

/// Physical model. Frequencies are in units of omega, times in 1/omega.
struct ModelParams {
  int n_qubits = 1;
  double omega_s = 1.0;
  std::optional<double> omega_a;
  std::optional<double> omega_b;
  double omega_cav = 0.5;
  Complex g{0.5, 0.0};
  double gamma = 5.0;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  /// False removes the detector layer behind the cavity (beta == 0).
  bool environment_layer = true;
  /// True couples the qubits straight to the detector environment.
  bool cut_probe = false;
  /// Amplitude of the direct-coupling kernel; defaults to gamma / 2.
  std::optional<double> direct_amplitude;
  O34Rotation o34_rotation = O34Rotation::Consistent;
  double pole_ceiling = 1e6;

  double qubit_frequency(int which) const;
  /// c = gamma / (2 |g|^2).
  double environment_amplitude() const;
  double direct_kernel_amplitude() const;

  CorrelationKernel probe_kernel() const;
  CorrelationKernel environment_kernel() const;
  CorrelationKernel detector_kernel() const;

  void validate() const;
};

/// Kernels of the z channel (first) and the y channel (second).
struct KernelPair {
  CorrelationKernel first;
  CorrelationKernel second;
};

/// The kernel pair the trajectories see: probe and environment, or detector alone when
/// cut_probe is set.
KernelPair model_kernels(const ModelParams& params);

/// N' = a_a (k - iM) - l_a N + i w N + k N^2,  M' = -i a_b N - l_b M + i w M + k N M.
struct OneQubitSystem {
  using State = Eigen::Vector2cd;
  Complex a_alpha, lambda_alpha, a_beta, lambda_beta;
  double kappa = 1.0;
  double omega = 1.0;

  static OneQubitSystem make(const ModelParams& params, const KernelPair& kernels);
  State rhs(const State& y) const;
};

/// Values of the three-time coefficient families at their s' = t boundary together with
/// the scalars that drive them.
struct TwoQubitBoundary {
  Complex n5, n6, m5, m6;
  Complex rotation;  // i(w_A + w_B) + k1 (N1 + N4) + k2 (N2 + N3)
  Complex shift_n;   // k1 (N1 - N4) + k2 (N2 - N3)
  Complex shift_m;   // k1 (M1 - M4) + k2 (M2 - M3)
};

/// Closed twelve-state system for the two-qubit coefficients.
/// State layout: N1..N4, M1..M4, then the kernel-weighted integrals of N5, M5 over alpha
/// and of N6, M6 over beta.
struct TwoQubitSystem {
  using State = Eigen::Matrix<Complex, 12, 1>;
  enum Index { kN1 = 0, kM1 = 4, kAlphaN5 = 8, kAlphaM5 = 9, kBetaN6 = 10, kBetaM6 = 11 };

  Complex a_alpha, lambda_alpha, a_beta, lambda_beta;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double omega_a = 1.0;
  double omega_b = 1.0;
  Eigen::Vector4d omega_j;

  static TwoQubitSystem make(const ModelParams& params, const KernelPair& kernels);
  TwoQubitBoundary boundary(const State& y) const;
  /// Linear map driving the (alpha or beta weighted) pair (N5-like, M5-like).
  Eigen::Matrix2cd coupling(const TwoQubitBoundary& b) const;
  State rhs(const State& y) const;
};

/// Coefficient values and their time derivatives on every grid point.
template <int States>
struct CoefficientTable {
  using State = Eigen::Matrix<Complex, States, 1>;
  TimeGrid grid;
  Eigen::Matrix<Complex, Eigen::Dynamic, States> values;
  Eigen::Matrix<Complex, Eigen::Dynamic, States> derivs;

  State at(std::size_t k) const { return values.row(static_cast<Eigen::Index>(k)).transpose(); }
  State slope(std::size_t k) const {
    return derivs.row(static_cast<Eigen::Index>(k)).transpose();
  }
  /// 4th-order interpolated value at t_k + dt/2.
  State midpoint(std::size_t k) const;
  /// 0: t_k, 1: t_k + dt/2, 2: t_{k+1}.
  State stage(std::size_t k, int stage) const {
    return stage == 0 ? at(k) : stage == 1 ? midpoint(k) : at(k + 1);
  }
};

struct OneQubitCoeffs : CoefficientTable<2> {
  OneQubitSystem system;
  KernelPair kernels;

  Complex N(std::size_t k) const { return values(static_cast<Eigen::Index>(k), 0); }
  Complex M(std::size_t k) const { return values(static_cast<Eigen::Index>(k), 1); }
};

struct TwoQubitCoeffs : CoefficientTable<12> {
  TwoQubitSystem system;
  KernelPair kernels;

  /// j = 1..4.
  Complex N(int j, std::size_t k) const;
  Complex M(int j, std::size_t k) const;
};

using Coefficients = std::variant<OneQubitCoeffs, TwoQubitCoeffs>;

OneQubitCoeffs solve_one_qubit_coeffs(const ModelParams& params, const TimeGrid& grid);
OneQubitCoeffs solve_one_qubit_coeffs(const ModelParams& params, const KernelPair& kernels,
                                      const TimeGrid& grid);
TwoQubitCoeffs solve_two_qubit_coeffs(const ModelParams& params, const TimeGrid& grid);
TwoQubitCoeffs solve_two_qubit_coeffs(const ModelParams& params, const KernelPair& kernels,
                                      const TimeGrid& grid);

/// Solves for the model's qubit count with its own kernels.
Coefficients solve_coeffs(const ModelParams& params, const TimeGrid& grid);

/// Coefficients with the probe removed: the qubits couple to `detector` alone.
Coefficients direct_coupling_coeffs(const ModelParams& params, const CorrelationKernel& detector,
                                    const TimeGrid& grid);

const TimeGrid& coefficient_grid(const Coefficients& coeffs);

}  // namespace qsdprobe
