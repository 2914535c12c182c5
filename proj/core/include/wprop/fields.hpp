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

#ifndef WPROP_FIELDS_HPP
#define WPROP_FIELDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wprop/config.hpp"
#include "wprop/grid.hpp"

namespace wprop {

/// L^2-normalized Gaussian wave packet centered at (x0, xi0) in phase space
/// with the given spinor direction (empty spinor means the first basis
/// vector).
SpinorField gaussian_packet(const PhaseSpaceGrid& grid, int n, const double* x0,
                            const double* xi0, double width,
                            const std::vector<Complex>& spinor = {});

/// Hermite function of the given order on axis 0 (Gaussian on the others),
/// L^2-normalized.
SpinorField hermite_field(const PhaseSpaceGrid& grid, int n, int order,
                          const std::vector<Complex>& spinor = {});

/// Band-limited tent bump: the C^0 triangle of half-width `a` centered at
/// x0, synthesized in frequency space under a smooth cutoff at the fixed
/// physical frequency `cutoff` (refinement-consistent by construction).
SpinorField tent_field(const PhaseSpaceGrid& grid, int n, const double* x0, double a,
                       double cutoff, const std::vector<Complex>& spinor = {});

/// The deterministic 20-field test family: 5 seeded Gaussian packets,
/// Hermite orders 0..2, 2 band-limited tent bumps, 5 translated and 5
/// modulated packet variants. Centers snap to L/16 in space and pi/L in
/// frequency so the family denotes the same continuum data on every
/// refinement of a base grid with N a multiple of 32.
std::vector<SpinorField> standard_field_family(const PhaseSpaceGrid& grid, int n,
                                               std::uint64_t seed, int count,
                                               double bandlimit);

/// Single field described by the config's field.* keys
/// (gaussian | hermite0 | hermite1 | hermite2 | tent).
SpinorField config_field(const ExperimentConfig& cfg, const PhaseSpaceGrid& grid, int n);

}  // namespace wprop

#endif  // WPROP_FIELDS_HPP
