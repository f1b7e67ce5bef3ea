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

namespace qsdprobe {

/// Classical fourth-order Runge-Kutta step for y' = f(stage, y).
/// `stage` is 0 at t, 1 at t + h/2 and 2 at t + h, so callers can look up
/// tabulated inputs instead of evaluating them at arbitrary times.
template <class State, class Rhs>
State rk4_step(const Rhs& f, const State& y, double h) {
  const State k1 = f(0, y);
  const State k2 = f(1, State(y + (0.5 * h) * k1));
  const State k3 = f(1, State(y + (0.5 * h) * k2));
  const State k4 = f(2, State(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Cubic Hermite value at the interval midpoint from endpoint values and slopes.
template <class T>
T hermite_midpoint(const T& p0, const T& d0, const T& p1, const T& d1, double h) {
  return 0.5 * (p0 + p1) + (h / 8.0) * (d0 - d1);
}

}  // namespace qsdprobe
