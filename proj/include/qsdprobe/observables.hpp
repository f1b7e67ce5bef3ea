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

#include <string>

#include "qsdprobe/ensemble.hpp"

namespace qsdprobe {

struct ObservableSeries {
  TimeGrid grid;
  std::string name;
  std::vector<double> values;
  std::vector<double> std_error;
};

/// Reduced single-qubit matrix of qubit `which` (0 = A, 1 = B); 2x2 input is returned as is.
ComplexMatrix reduced_qubit(const ComplexMatrix& rho, int which);

/// Excited-state population <1| rho_which |1>.
ObservableSeries population(const DensityMatrixSeries& series, int which = 0);
/// |<0| rho_which |1>|.
ObservableSeries coherence(const DensityMatrixSeries& series, int which = 0);
/// Trace of rho_t.
ObservableSeries trace(const DensityMatrixSeries& series);
/// Wootters concurrence with jackknife error bars over the ensemble blocks.
ObservableSeries concurrence(const DensityMatrixSeries& series);

struct ConcurrenceValue {
  double value = 0.0;
  /// Weight of the negative eigenvalues removed before evaluation.
  double clipped_mass = 0.0;
};

/// Concurrence of one 4x4 matrix after Hermitian symmetrization and projection onto the
/// positive cone. Throws if the input is far from Hermitian.
ConcurrenceValue concurrence(const ComplexMatrix& rho);

/// Returns the positive part of a Hermitian matrix rescaled to unit trace.
ComplexMatrix project_to_state(const ComplexMatrix& rho, double* clipped_mass = nullptr);

}  // namespace qsdprobe
