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

#include "slice_oracle.hpp"

#include <cmath>

namespace qsdprobe::testing {

SliceSolution march_one_qubit_slices(const ModelParams& params, const KernelPair& kernels,
                                     double t_max, double dt) {
  const auto steps = static_cast<std::size_t>(std::llround(t_max / dt));
  const double kappa = params.kappa1;
  const double omega = params.qubit_frequency(0);
  SliceSolution out;
  out.t.resize(steps + 1);
  out.N.assign(steps + 1, 0.0);
  out.M.assign(steps + 1, 0.0);
  std::vector<Complex> n{Complex(kappa)};
  std::vector<Complex> m{Complex(0.0)};
  out.t[0] = 0.0;

  auto integrals = [&](double t, const std::vector<Complex>& nn, const std::vector<Complex>& mm) {
    Complex N = 0.0, M = 0.0;
    for (std::size_t j = 0; j < nn.size(); ++j) {
      const double w = (j == 0 || j + 1 == nn.size()) ? 0.5 * dt : dt;
      const double s = static_cast<double>(j) * dt;
      N += w * kernel_value(kernels.first, t, s) * nn[j];
      M += w * kernel_value(kernels.second, t, s) * mm[j];
    }
    return std::pair{N, M};
  };

  for (std::size_t k = 0; k < steps; ++k) {
    const double t1 = static_cast<double>(k + 1) * dt;
    Complex N1 = out.N[k], M1 = out.M[k];
    std::vector<Complex> nn, mm;
    for (int iter = 0; iter < 50; ++iter) {
      const Complex growth =
          std::exp(0.5 * dt * (2.0 * Complex(0.0, omega) + kappa * (out.N[k] + N1)));
      nn.resize(k + 2);
      mm.resize(k + 2);
      for (std::size_t j = 0; j <= k; ++j) {
        nn[j] = n[j] * growth;
        mm[j] = m[j] * growth;
      }
      nn[k + 1] = kappa - Complex(0.0, 1.0) * M1;
      mm[k + 1] = -Complex(0.0, 1.0) * N1;
      const auto [N, M] = integrals(t1, nn, mm);
      const double change = std::abs(N - N1) + std::abs(M - M1);
      N1 = N;
      M1 = M;
      if (change < 1e-15) break;
    }
    n = std::move(nn);
    m = std::move(mm);
    out.t[k + 1] = t1;
    out.N[k + 1] = N1;
    out.M[k + 1] = M1;
  }
  return out;
}

}  // namespace qsdprobe::testing
