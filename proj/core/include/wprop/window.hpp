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

#ifndef WPROP_WINDOW_HPP
#define WPROP_WINDOW_HPP

#include <string>
#include <vector>

#include "wprop/grid.hpp"

namespace wprop {

/// A nonzero Schwartz-class window sampled on the spatial lattice.
/// The default is an L^2-normalized Gaussian exp(-|x|^2 / (2 width^2)).
/// Partial derivatives are precomputed spectrally (exact for the periodized
/// trigonometric interpolant) for use in the symbol remainder kernels.
class Window {
 public:
  static Window gaussian(const PhaseSpaceGrid& grid, double width = 1.0);
  static Window from_samples(const PhaseSpaceGrid& grid, std::vector<Complex> samples,
                             std::string id = "custom");

  const PhaseSpaceGrid& grid() const { return grid_; }
  const std::vector<Complex>& samples() const { return samples_; }
  const std::vector<Complex>& derivative(int axis) const {
    return derivatives_[static_cast<std::size_t>(axis)];
  }
  double l2_norm() const { return l2_norm_; }
  const std::string& id() const { return id_; }

  /// Rescales so the quadrature L^2 norm is exactly 1.
  void normalize();

  /// Enforces the unit-norm precondition of the inversion formula.
  void require_unit_norm(const char* where) const;

 private:
  Window() = default;
  void finalize();

  PhaseSpaceGrid grid_;
  std::vector<Complex> samples_;
  std::vector<std::vector<Complex>> derivatives_;
  double l2_norm_ = 0.0;
  std::string id_;
};

}  // namespace wprop

#endif  // WPROP_WINDOW_HPP
