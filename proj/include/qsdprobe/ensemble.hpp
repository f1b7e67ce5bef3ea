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

#include <functional>

#include "qsdprobe/trajectory.hpp"

namespace qsdprobe {

inline constexpr std::size_t kChunkSize = 64;
inline constexpr std::size_t kJackknifeBlocks = 16;

/// Ensemble-averaged rho_t = M[|psi_t><psi_t|] with Monte-Carlo errors.
struct DensityMatrixSeries {
  TimeGrid grid;
  std::vector<ComplexMatrix> rho;
  /// Entrywise standard error of the mean.
  std::vector<Eigen::MatrixXd> entry_error;
  /// Largest entry of entry_error at each time.
  std::vector<double> std_error;
  /// Accepted trajectories.
  std::size_t K = 0;
  std::size_t rejected = 0;
  /// Per-block means for jackknife resampling: block_rho[b][k]. Trajectory i belongs to
  /// block (i / kChunkSize) % kJackknifeBlocks.
  std::vector<std::vector<ComplexMatrix>> block_rho;
  std::vector<std::size_t> block_count;

  int dimension() const { return rho.empty() ? 0 : static_cast<int>(rho.front().rows()); }
};

struct EnsembleOptions {
  /// 0 selects default_worker_count().
  unsigned workers = 0;
  /// Called from worker threads with (finished, total) roughly every 5% of K.
  std::function<void(std::size_t, std::size_t)> progress;
  double max_reject_fraction = 1e-3;
};

/// QSDPROBE_WORKERS if set, otherwise the hardware concurrency.
unsigned default_worker_count();

/// Seeds of trajectory k: z channel and y channel.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::size_t k, int channel);

/// Runs K trajectories with noises drawn from `kernels` and averages their projectors.
/// The result is bit-identical for any worker count.
DensityMatrixSeries run_ensemble(const ModelParams& params, const Coefficients& coeffs,
                                 const KernelPair& kernels, const ComplexVector& psi0,
                                 const TimeGrid& grid, std::size_t K, std::uint64_t master_seed,
                                 const EnsembleOptions& options = {});

DensityMatrixSeries density_from_trajectories(const std::vector<TrajectoryState>& paths);

/// Stored standard error at t_index; throws when K < 2.
double mc_error(const DensityMatrixSeries& series, std::size_t t_index);

}  // namespace qsdprobe
