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

#include "qsdprobe/observables.hpp"

#include <algorithm>
#include <cmath>

namespace qsdprobe {

ComplexMatrix reduced_qubit(const ComplexMatrix& rho, int which) {
  if (which != 0 && which != 1) throw InvalidArgument("qubit index must be 0 or 1");
  if (rho.rows() == 2) {
    if (which != 0) throw InvalidArgument("one-qubit state has no qubit B");
    return rho;
  }
  if (rho.rows() != 4) throw DimensionMismatch("expected a one- or two-qubit density matrix");
  return which == 0 ? partial_trace(rho, 2, 2) : partial_trace_first(rho, 2, 2);
}

namespace {

template <class F>
ObservableSeries evaluate(const DensityMatrixSeries& series, std::string name, F f) {
  ObservableSeries out;
  out.grid = series.grid;
  out.name = std::move(name);
  const std::size_t times = series.rho.size();
  out.values.resize(times);
  out.std_error.assign(times, 0.0);

  std::vector<std::size_t> used;
  for (std::size_t b = 0; b < series.block_count.size(); ++b) {
    if (series.block_count[b] > 0) used.push_back(b);
  }
  const bool jackknife = used.size() >= 2;
  const double total = static_cast<double>(series.K);
  std::vector<double> loo(used.size());
  for (std::size_t k = 0; k < times; ++k) {
    out.values[k] = f(series.rho[k]);
    if (!jackknife) {
      out.std_error[k] = k < series.std_error.size() ? series.std_error[k] : 0.0;
      continue;
    }
    double mean = 0.0;
    for (std::size_t u = 0; u < used.size(); ++u) {
      const std::size_t b = used[u];
      const double nb = static_cast<double>(series.block_count[b]);
      const ComplexMatrix rest = (total * series.rho[k] - nb * series.block_rho[b][k]) / (total - nb);
      loo[u] = f(rest);
      mean += loo[u];
    }
    mean /= static_cast<double>(used.size());
    double ss = 0.0;
    for (double v : loo) ss += (v - mean) * (v - mean);
    const double B = static_cast<double>(used.size());
    out.std_error[k] = std::sqrt((B - 1.0) / B * ss);
  }
  return out;
}

std::string indexed(const char* base, int which) {
  return std::string(base) + (which == 0 ? "_A" : "_B");
}

}  // namespace

ObservableSeries population(const DensityMatrixSeries& series, int which) {
  auto f = [which](const ComplexMatrix& rho) { return reduced_qubit(rho, which)(1, 1).real(); };
  return evaluate(series, series.dimension() == 2 ? "population" : indexed("population", which), f);
}

ObservableSeries coherence(const DensityMatrixSeries& series, int which) {
  auto f = [which](const ComplexMatrix& rho) { return std::abs(reduced_qubit(rho, which)(0, 1)); };
  return evaluate(series, series.dimension() == 2 ? "coherence" : indexed("coherence", which), f);
}

ObservableSeries trace(const DensityMatrixSeries& series) {
  return evaluate(series, "trace", [](const ComplexMatrix& rho) { return rho.trace().real(); });
}

ObservableSeries concurrence(const DensityMatrixSeries& series) {
  if (series.dimension() != 4) throw DimensionMismatch("concurrence needs a two-qubit series");
  return evaluate(series, "concurrence",
                  [](const ComplexMatrix& rho) { return concurrence(rho).value; });
}

ComplexMatrix project_to_state(const ComplexMatrix& rho, double* clipped_mass) {
  const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  Eigen::VectorXd w = eig.eigenvalues();
  double clipped = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < 0.0) {
      clipped -= w[i];
      w[i] = 0.0;
    }
  }
  const double trace = w.sum();
  if (!(trace > 0.0)) throw NumericalError("density matrix has no positive weight");
  if (clipped_mass) *clipped_mass = clipped;
  const ComplexMatrix& v = eig.eigenvectors();
  return v * (w / trace).cast<Complex>().asDiagonal() * v.adjoint();
}

ConcurrenceValue concurrence(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionMismatch("concurrence needs a 4x4 matrix");
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  if (!is_hermitian(rho, 1e-8 * scale)) throw InvalidArgument("concurrence input is not Hermitian");
  ConcurrenceValue out;
  const ComplexMatrix state = project_to_state(rho, &out.clipped_mass);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(state);
  const Eigen::VectorXd w = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix root = eig.eigenvectors() * w.cast<Complex>().asDiagonal() *
                             eig.eigenvectors().adjoint();
  const ComplexMatrix yy = tensor_product(ops::sigma_y(), ops::sigma_y());
  // Singular values of sqrt(rho) Y conj(sqrt(rho)) are the square roots of the eigenvalues
  // of sqrt(rho) rho~ sqrt(rho).
  const ComplexMatrix a = root * yy * root.conjugate();
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const Eigen::VectorXd lambda = svd.singularValues();
  out.value = std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
  return out;
}

}  // namespace qsdprobe
