// Copyright 2026 The wprop Authors
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

#ifndef WPROP_ERRORS_HPP
#define WPROP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace wprop {

/// Requested object exceeds the supported problem size (e.g. Clifford
/// dimension above the desk-scale cap).
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// A window failed validation (all-zero samples, wrong grid, ...).
struct InvalidWindowError : std::runtime_error {
  explicit InvalidWindowError(const std::string& what) : std::runtime_error(what) {}
};

/// A potential does not satisfy the hypotheses of the requested pipeline
/// (matrix-valued where scalar is required, wrong derivative class, ...).
struct HypothesisError : std::runtime_error {
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

/// A field carries non-negligible mass on the boundary shell of the
/// periodized box, so torus quadrature would not represent it faithfully.
struct BoundaryMassError : std::runtime_error {
  explicit BoundaryMassError(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed-point iteration failed to reach the requested tolerance.
/// Carries the residual history for diagnosis.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

/// Configuration file or config value problem.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wprop

#endif  // WPROP_ERRORS_HPP
