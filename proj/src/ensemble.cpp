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

#include "qsdprobe/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace qsdprobe {

namespace {

// Running mean and summed squared deviation of every projector entry at every time.
// Rows index entries (column-major i + d j), columns index time.
struct Moments {
  std::size_t count = 0;
  ComplexMatrix mean;
  Eigen::MatrixXd m2;

  Moments(int dim, std::size_t times)
      : mean(ComplexMatrix::Zero(dim * dim, static_cast<Eigen::Index>(times))),
        m2(Eigen::MatrixXd::Zero(dim * dim, static_cast<Eigen::Index>(times))) {}

  void add(const ComplexMatrix& psi) {
    ++count;
    const double inv = 1.0 / static_cast<double>(count);
    const Eigen::Index dim = psi.rows();
    for (Eigen::Index k = 0; k < psi.cols(); ++k) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex cj = std::conj(psi(j, k));
        for (Eigen::Index i = 0; i < dim; ++i) {
          const Eigen::Index e = i + dim * j;
          const Complex x = psi(i, k) * cj;
          const Complex delta = x - mean(e, k);
          mean(e, k) += delta * inv;
          m2(e, k) += std::real(std::conj(delta) * (x - mean(e, k)));
        }
      }
    }
  }

  // Pairwise combination of two disjoint sample sets.
  static Moments merge(const Moments& a, const Moments& b) {
    if (a.count == 0) return b;
    if (b.count == 0) return a;
    Moments out = a;
    const double na = static_cast<double>(a.count);
    const double nb = static_cast<double>(b.count);
    const double n = na + nb;
    const ComplexMatrix delta = b.mean - a.mean;
    out.count = a.count + b.count;
    out.mean = a.mean + delta * (nb / n);
    out.m2 = a.m2 + b.m2 + delta.cwiseAbs2() * (na * nb / n);
    return out;
  }
};

Moments tree_reduce(std::vector<Moments> parts) {
  while (parts.size() > 1) {
    std::vector<Moments> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
      next.push_back(Moments::merge(parts[i], parts[i + 1]));
    }
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return std::move(parts.front());
}

ComplexMatrix unpack(const ComplexMatrix& packed, Eigen::Index k, int dim) {
  ComplexMatrix m(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) m(i, j) = packed(i + dim * j, k);
  }
  return m;
}

DensityMatrixSeries finish(const TimeGrid& grid, int dim, const std::vector<Moments>& blocks,
                           std::size_t rejected) {
  const Moments total = tree_reduce(blocks);
  DensityMatrixSeries out;
  out.grid = grid;
  out.K = total.count;
  out.rejected = rejected;
  const std::size_t times = grid.size();
  out.rho.reserve(times);
  out.entry_error.reserve(times);
  out.std_error.reserve(times);
  const double n = static_cast<double>(total.count);
  for (std::size_t k = 0; k < times; ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    const ComplexMatrix rho = unpack(total.mean, col, dim);
    out.rho.push_back(0.5 * (rho + rho.adjoint()));
    Eigen::MatrixXd err(dim, dim);
    for (int j = 0; j < dim; ++j) {
      for (int i = 0; i < dim; ++i) {
        err(i, j) = total.count < 2 ? std::numeric_limits<double>::quiet_NaN()
                                    : std::sqrt(total.m2(i + dim * j, col) / (n - 1.0) / n);
      }
    }
    out.std_error.push_back(total.count < 2 ? std::numeric_limits<double>::quiet_NaN()
                                            : err.maxCoeff());
    out.entry_error.push_back(std::move(err));
  }
  out.block_rho.resize(blocks.size());
  out.block_count.resize(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    out.block_count[b] = blocks[b].count;
    out.block_rho[b].reserve(times);
    for (std::size_t k = 0; k < times; ++k) {
      const ComplexMatrix rho = unpack(blocks[b].mean, static_cast<Eigen::Index>(k), dim);
      out.block_rho[b].push_back(0.5 * (rho + rho.adjoint()));
    }
  }
  return out;
}

std::size_t block_of(std::size_t k) { return (k / kChunkSize) % kJackknifeBlocks; }

}  // namespace

unsigned default_worker_count() {
  if (const char* env = std::getenv("QSDPROBE_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::size_t k, int channel) {
  return derive_seed(master_seed, k, static_cast<std::uint64_t>(channel));
}

DensityMatrixSeries run_ensemble(const ModelParams& params, const Coefficients& coeffs,
                                 const KernelPair& kernels, const ComplexVector& psi0,
                                 const TimeGrid& grid, std::size_t K, std::uint64_t master_seed,
                                 const EnsembleOptions& options) {
  if (K < 2) throw InvalidArgument("ensemble needs at least two trajectories");
  if (!(coefficient_grid(coeffs) == grid)) {
    throw DimensionMismatch("coefficient grid differs from the ensemble grid");
  }
  if (std::abs(psi0.norm() - 1.0) > tolerance::kNormalization) {
    throw InvalidArgument("initial state must be normalized");
  }
  const auto tables = build_generator_tables(params, coeffs);
  const int dim = EffectiveGenerator(tables, NoiseRealization::zeros(grid),
                                     NoiseRealization::zeros(grid))
                      .dimension();
  if (psi0.size() != dim) throw DimensionMismatch("initial state dimension differs from the model");

  std::vector<Moments> blocks(kJackknifeBlocks, Moments(dim, grid.size()));
  std::vector<std::size_t> rejects(kJackknifeBlocks, 0);
  std::atomic<std::size_t> next_block{0};
  std::atomic<std::size_t> finished{0};
  std::mutex progress_mutex;
  std::size_t next_report = 0;
  const std::size_t report_every = std::max<std::size_t>(1, K / 20);
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    try {
      ComplexMatrix psi;
      for (std::size_t b = next_block++; b < kJackknifeBlocks; b = next_block++) {
        for (std::size_t start = b * kChunkSize; start < K;
             start += kChunkSize * kJackknifeBlocks) {
          const std::size_t stop = std::min(K, start + kChunkSize);
          for (std::size_t k = start; k < stop; ++k) {
            EffectiveGenerator gen(
                tables, sample_noise(kernels.first, grid, trajectory_seed(master_seed, k, 0)),
                sample_noise(kernels.second, grid, trajectory_seed(master_seed, k, 1)));
            if (integrate_trajectory(gen, psi0, psi)) {
              ++rejects[b];
            } else {
              blocks[b].add(psi);
            }
          }
          const std::size_t done = finished += stop - start;
          if (options.progress) {
            std::lock_guard<std::mutex> lock(progress_mutex);
            if (done >= next_report) {
              options.progress(done, K);
              next_report = (done / report_every + 1) * report_every;
            }
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  const unsigned workers = std::min<unsigned>(
      options.workers ? options.workers : default_worker_count(),
      static_cast<unsigned>(kJackknifeBlocks));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::size_t rejected = 0;
  for (std::size_t r : rejects) rejected += r;
  if (static_cast<double>(rejected) > options.max_reject_fraction * static_cast<double>(K)) {
    throw ExcessiveRejects(rejected, K);
  }
  return finish(grid, dim, blocks, rejected);
}

DensityMatrixSeries density_from_trajectories(const std::vector<TrajectoryState>& paths) {
  if (paths.empty()) throw InvalidArgument("no trajectories to average");
  const TimeGrid& grid = paths.front().grid;
  const int dim = static_cast<int>(paths.front().psi.rows());
  std::vector<Moments> blocks(kJackknifeBlocks, Moments(dim, grid.size()));
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const auto& p = paths[k];
    if (!(p.grid == grid) || p.psi.rows() != dim ||
        p.psi.cols() != static_cast<Eigen::Index>(grid.size())) {
      throw DimensionMismatch("trajectories differ in grid or dimension");
    }
    blocks[block_of(k)].add(p.psi);
  }
  return finish(grid, dim, blocks, 0);
}

double mc_error(const DensityMatrixSeries& series, std::size_t t_index) {
  if (series.K < 2) throw InvalidArgument("standard error needs at least two trajectories");
  if (t_index >= series.std_error.size()) throw InvalidArgument("time index out of range");
  return series.std_error[t_index];
}

}  // namespace qsdprobe
