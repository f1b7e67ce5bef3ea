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
#include <utility>
#include <vector>

namespace qsdprobe {

/// Quick runs criteria 1-3; Full runs 1-10.
enum class ValidationLevel { Quick, Full };

struct ValidationOptions {
  /// Multiplies the sampled noise amplitude in criterion 1 (fault injection).
  double kernel_amplitude_scale = 1.0;
  unsigned workers = 0;
  /// Progress lines; null for silence.
  std::ostream* log = nullptr;
  /// Restricts the run to these ids when non-empty.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<std::pair<std::string, double>> measured;
  double seconds = 0.0;
};

struct ValidationReport {
  std::vector<CriterionResult> results;

  bool all_passed() const;
  /// Machine-readable form: {"passed": bool, "criteria": [{id, name, passed, detail,
  /// seconds, measured: {...}}]}.
  std::string to_json() const;
};

inline constexpr int kCriterionCount = 10;

/// Runs one criterion. Solver failures are caught and reported as a failed entry.
CriterionResult run_criterion(int id, const ValidationOptions& options = {});

ValidationReport run_validation(ValidationLevel level, const ValidationOptions& options = {});

/// "[PASS] 4 master vs ensemble: ..." style line.
std::string format_result(const CriterionResult& result);

}  // namespace qsdprobe
