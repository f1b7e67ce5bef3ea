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

#include <iosfwd>
#include <string>
#include <vector>

#include "qsdprobe/config.hpp"
#include "qsdprobe/observables.hpp"

namespace qsdprobe {

struct ScenarioPreset {
  std::string id;
  std::string description;
  ModelParams model;
  /// Coupling values swept by the preset; each gives one probe curve.
  std::vector<double> g_values;
  std::string initial_state;
  double t_max = 10.0;
  double dt = 0.01;
  std::size_t K = 10000;
  std::vector<std::string> observables;
  /// Choices not fixed by the figure they reproduce; written to the CSV header.
  std::vector<std::string> notes;
};

const std::vector<ScenarioPreset>& scenario_presets();
/// Throws ConfigError for unknown ids.
const ScenarioPreset& find_scenario(const std::string& id);

/// Fills a config with a preset's values.
RunConfig scenario_config(const std::string& id);

struct RunSummary {
  std::vector<std::string> files;
  std::size_t rejected = 0;
  double max_std_error = 0.0;
  double seconds = 0.0;
};

/// Coefficients, ensembles, observables and references for one config; writes CSV output.
RunSummary run_scenario(const RunConfig& config, std::ostream& log);

/// The series run_scenario writes, without touching the file system.
std::vector<ObservableSeries> compute_scenario(const RunConfig& config, std::ostream& log,
                                               RunSummary* summary = nullptr);

}  // namespace qsdprobe
