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

#include "qsdprobe/observables.hpp"

namespace qsdprobe {

/// `#` metadata lines, then `t,<name>,<name>_stderr,...` with 12 significant digits.
std::string render_csv(const std::vector<ObservableSeries>& series,
                       const std::vector<std::string>& metadata = {});

/// Writes render_csv output through a temporary file renamed into place.
void export_csv(const std::vector<ObservableSeries>& series, const std::string& path,
                const std::vector<std::string>& metadata = {});

/// Writes `contents` to `path` atomically (temporary file plus rename).
void write_file_atomic(const std::string& path, const std::string& contents);

/// Path of the temporary file currently being written, or an empty string. Safe to read
/// from a signal handler.
const char* pending_output_path();

}  // namespace qsdprobe
