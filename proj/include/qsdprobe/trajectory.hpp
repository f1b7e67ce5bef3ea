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

#include <memory>
#include <optional>

#include "qsdprobe/coefficients.hpp"

namespace qsdprobe {

inline constexpr double kOverflowNorm = 1e6;

/// Unnormalized psi_t for one pair of noise paths; column k holds psi(t_k).
struct TrajectoryState {
  TimeGrid grid;
  ComplexMatrix psi;
  std::uint64_t z_seed = 0;
  std::uint64_t y_seed = 0;

  ComplexVector at(std::size_t k) const { return psi.col(static_cast<Eigen::Index>(k)); }
  double norm_squared(std::size_t k) const {
    return psi.col(static_cast<Eigen::Index>(k)).squaredNorm();
  }
};

/// Noise-independent operators of the generator tabulated at every Runge-Kutta stage
/// time; built once per coefficient set and shared read-only by all trajectories.
class GeneratorTables;

std::shared_ptr<const GeneratorTables> build_generator_tables(const ModelParams& params,
                                                              const Coefficients& coeffs);

/// G(t) = -iH_s + L z*_t - (L^dag + i y*_t) Oz(t) - i z*_t Oy(t) for one noise pair.
class EffectiveGenerator {
 public:
  EffectiveGenerator(std::shared_ptr<const GeneratorTables> tables, NoiseRealization z,
                     NoiseRealization y);

  int dimension() const;
  const TimeGrid& grid() const;
  const NoiseRealization& z_path() const { return z_; }
  const NoiseRealization& y_path() const { return y_; }
  const GeneratorTables& tables() const { return *tables_; }

  /// G(t_k). For two qubits the O5 noise functionals enter through `phi` (z-channel sum)
  /// and `psi` (y-channel sum); they are ignored for one qubit.
  ComplexMatrix matrix(std::size_t k, Complex phi = 0.0, Complex psi = 0.0) const;

  /// Noise at stage index 2k (t_k), 2k + 1 (midpoint) or 2k + 2.
  Complex z_stage(std::size_t s) const { return zs_[s]; }
  Complex y_stage(std::size_t s) const { return ys_[s]; }

 private:
  std::shared_ptr<const GeneratorTables> tables_;
  NoiseRealization z_;
  NoiseRealization y_;
  std::vector<Complex> zs_;
  std::vector<Complex> ys_;
};

EffectiveGenerator build_effective_generator(const ModelParams& params,
                                             const Coefficients& coeffs,
                                             const NoiseRealization& z_path,
                                             const NoiseRealization& y_path);

/// Fixed-step RK4 integration of d psi / dt = G(t) psi without renormalization.
/// Throws NonFiniteValue if the state overflows.
TrajectoryState run_trajectory(const EffectiveGenerator& generator, const ComplexVector& psi0,
                               const TimeGrid& grid);

/// As run_trajectory but writes into `psi` (resized as needed) and reports the time of
/// overflow instead of throwing.
std::optional<double> integrate_trajectory(const EffectiveGenerator& generator,
                                           const ComplexVector& psi0, ComplexMatrix& psi);

}  // namespace qsdprobe
