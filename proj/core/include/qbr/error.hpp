// Copyright 2026 The qbr Authors
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

#include <stdexcept>
#include <string>

namespace qbr {

// Plane-length mismatch between quaternion batches or tables.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Inverse of a zero-norm quaternion.
struct SingularityError : std::domain_error {
  using std::domain_error::domain_error;
};

// Malformed input file. Carries the offending path and 1-based line number.
struct ParseError : std::runtime_error {
  ParseError(const std::string& path, std::size_t line, const std::string& what_arg)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what_arg),
        path(path),
        line(line) {}

  std::string path;
  std::size_t line;
};

// Invalid run configuration (empty train split, bad hyperparameter, ...).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unknown entity or relation name. Message names the offender.
struct LookupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when the training loss stops being finite.
struct TrainingDivergedError : std::runtime_error {
  TrainingDivergedError(int epoch, int batch, double lambda, double max_abs_param)
      : std::runtime_error("training diverged: non-finite loss at epoch " +
                           std::to_string(epoch) + ", batch " + std::to_string(batch) +
                           " (lambda=" + std::to_string(lambda) +
                           ", max|param|=" + std::to_string(max_abs_param) + ")"),
        epoch(epoch),
        batch(batch),
        lambda(lambda),
        max_abs_param(max_abs_param) {}

  int epoch;
  int batch;
  double lambda;
  double max_abs_param;
};

}  // namespace qbr
