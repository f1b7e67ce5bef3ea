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

#include <optional>
#include <string>

#include "qsdprobe/coefficients.hpp"

namespace qsdprobe {

inline constexpr std::uint32_t kCoefficientCacheVersion = 1;

/// Binary layout, all little-endian: 8-byte magic "QSDPCOEF", u32 version, u32 qubit count,
/// u32 state count, f64 t_max, f64 dt, u64 n_steps, both kernels (u32 kind, f64 g.re,
/// f64 g.im, f64 omega, f64 gamma, f64 amplitude), the solver constants as f64, then the
/// value and derivative tables as (re, im) pairs in row-major (time, state) order.
std::string serialize_coefficients(const Coefficients& coeffs);
Coefficients deserialize_coefficients(const std::string& bytes);

void write_coefficients(const std::string& path, const Coefficients& coeffs);
Coefficients read_coefficients(const std::string& path);

/// Loads `path` if it exists and was produced for the same model, kernels and grid.
std::optional<Coefficients> load_matching_coefficients(const std::string& path,
                                                       const ModelParams& params,
                                                       const KernelPair& kernels,
                                                       const TimeGrid& grid);

}  // namespace qsdprobe
