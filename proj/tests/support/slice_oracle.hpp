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

#include <vector>

#include "qsdprobe/coefficients.hpp"

namespace qsdprobe::testing {

struct SliceSolution {
  std::vector<double> t;
  std::vector<Complex> N;
  std::vector<Complex> M;
};

/// One-qubit coefficients from the two-time functions n(t, s), m(t, s): each slice is
/// advanced by exp(int (i w + k N) du), the diagonal is set to n(t, t) = k - iM(t),
/// m(t, t) = -iN(t), and N, M are trapezoid integrals against the kernels. Second order.
SliceSolution march_one_qubit_slices(const ModelParams& params, const KernelPair& kernels,
                                     double t_max, double dt);

}  // namespace qsdprobe::testing
