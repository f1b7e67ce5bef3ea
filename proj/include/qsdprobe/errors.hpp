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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsdprobe {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Numerical failures map to CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The Riccati-type coefficient equations diverge in finite time for some
/// parameter sets (e.g. N = |g| tan(|g| t) without an environment).
class PoleEncountered : public NumericalError {
 public:
  explicit PoleEncountered(double t)
      : NumericalError("coefficient pole encountered near t = " + std::to_string(t)), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

class NonFiniteValue : public NumericalError {
 public:
  NonFiniteValue(double t, const std::string& where)
      : NumericalError("non-finite value in " + where + " at t = " + std::to_string(t)), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

class ExcessiveRejects : public NumericalError {
 public:
  ExcessiveRejects(std::size_t rejected, std::size_t total)
      : NumericalError(std::to_string(rejected) + " of " + std::to_string(total) +
                       " trajectories overflowed"),
        rejected_(rejected) {}
  std::size_t rejected() const noexcept { return rejected_; }

 private:
  std::size_t rejected_;
};

class CutoffNotConverged : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class MemoryGuard : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Configuration problems map to CLI exit code 2.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line = 0, std::string field = {})
      : Error(format(message, line, field)), line_(line), field_(std::move(field)) {}
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(const std::string& message, int line, const std::string& field) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "'" + field + "': ";
    return out + message;
  }
  int line_;
  std::string field_;
};

}  // namespace qsdprobe
