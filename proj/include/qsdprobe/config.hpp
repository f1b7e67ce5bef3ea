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
#include <vector>

#include "qsdprobe/coefficients.hpp"

namespace qsdprobe {

inline constexpr std::size_t kMinEnsembleSize = 100;

/// Named preset (excited, ground, bell_phi_plus, both_excited) or explicit amplitudes.
struct InitialState {
  std::string preset = "excited";
  std::vector<Complex> amplitudes;

  /// State vector for n qubits in the |q_A q_B> = index 2 q_A + q_B ordering.
  ComplexVector vector(int n_qubits) const;
};

struct EnsembleSpec {
  std::size_t K = 10000;
  std::uint64_t seed = 1;
};

struct OutputSpec {
  std::string directory = ".";
  std::string prefix;
  /// Any of population, coherence, concurrence, trace.
  std::vector<std::string> observables{"population"};
  /// Emit the direct-coupling comparison curve.
  bool direct_comparison = true;
  /// Emit the deterministic reference (one-qubit master equation).
  bool reference = true;
  /// Optional binary coefficient cache reused between runs.
  std::string coefficient_cache;
};

struct RunConfig {
  std::string scenario;
  ModelParams model;
  double t_max = 10.0;
  double dt = 0.01;
  EnsembleSpec ensemble;
  InitialState initial_state;
  OutputSpec output;
  /// Notes raised while resolving the document, e.g. preset overrides.
  std::vector<std::string> warnings;

  TimeGrid grid() const { return TimeGrid::make(t_max, dt); }
};

/// Parses the sectioned key = value format:
///
///   scenario = fig2b          (optional, top level)
///   [model]    n_qubits, omega_s, omega_a, omega_b, omega_cav, g, g_imag, gamma, kappa1,
///              kappa2, environment_layer, cut_probe, direct_amplitude, o34_rotation,
///              pole_ceiling, initial_state
///   [grid]     t_max, dt
///   [ensemble] K, seed
///   [output]   directory, prefix, observables, direct_comparison, reference,
///              coefficient_cache
///
/// Frequencies are in units of omega and times in 1/omega. Throws ConfigError with the
/// offending line and field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(render_config(c)) reproduces c.
std::string render_config(const RunConfig& config);

/// Checks every invariant of a resolved configuration.
void validate_config(const RunConfig& config);

}  // namespace qsdprobe
