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

#ifndef WPROP_CONFIG_HPP
#define WPROP_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wprop/clifford.hpp"
#include "wprop/grid.hpp"
#include "wprop/potentials.hpp"
#include "wprop/spaces.hpp"

namespace wprop {

/// Experiment parameters, serialized as flat `key = value` text with dotted
/// keys. Parsing and serialization round-trip losslessly; the fingerprint
/// hashes the canonical (sorted-key) serialization, so it changes exactly
/// when a semantic field changes.
struct ExperimentConfig {
  // grid.*
  int dimension = 1;
  int points_per_axis = 128;
  double box_half_width = 12.0;

  // clifford.variant
  std::string clifford_variant = "generic";

  // window.width
  double window_width = 1.0;

  // potential.*
  std::string potential_kind = "stark";
  std::vector<double> potential_field = {1.0};
  double potential_omega = 1.0;
  double potential_amplitude = 1.0;
  double potential_kappa = 1.0;
  std::string potential_modulation = "none";
  double potential_modulation_freq = 1.0;

  // split.delta
  double split_delta = 0.5;

  // time.*
  double horizon = 0.5;
  int segments = 8;

  // norms (semicolon-separated flavor,p,q,r,rho items)
  std::vector<NormSpec> norms = default_norms();

  // data.*
  std::uint64_t seed = 42;
  int field_count = 20;
  double bandlimit = 8.0;

  // field.* (single-field subcommands)
  std::string field_kind = "gaussian";
  double field_center_x = 0.0;
  double field_center_xi = 0.0;
  double field_width = 1.0;

  // picard.*
  double picard_tol = 1e-8;
  int picard_max_iter = 12;

  // solver.pipeline: u1 | u2 | auto
  std::string pipeline = "auto";

  static std::vector<NormSpec> default_norms();

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_string(const std::string& text);
  void set(const std::string& key, const std::string& value);

  std::string to_string() const;  ///< canonical sorted-key serialization
  std::string fingerprint() const;

  /// Doubles points_per_axis and segments k times.
  void refine(int k);

  PhaseSpaceGrid make_grid() const;
  CliffordRep make_rep() const;
  PotentialSpec make_potential() const;
};

NormSpec parse_norm_spec(const std::string& item);
std::string format_norm_exponent(double p);

}  // namespace wprop

#endif  // WPROP_CONFIG_HPP
