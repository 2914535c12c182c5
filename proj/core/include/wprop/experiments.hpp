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

#ifndef WPROP_EXPERIMENTS_HPP
#define WPROP_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "wprop/config.hpp"
#include "wprop/spaces.hpp"

namespace wprop {

struct NormReportRow {
  double t = 0.0;
  NormSpec spec;
  double norm_u0 = 0.0;
  double norm_ut = 0.0;
  double ratio = 0.0;
};

struct NormSummary {
  NormSpec spec;
  double sup_ratio = 0.0;
};

/// Norm-boundedness report: one row per (initial field, time node, norm),
/// rows sorted by (t, flavor, p, q, r, rho) with field order preserved
/// within ties, plus sup-over-(t, field) summaries per norm.
struct NormReport {
  std::string experiment;
  std::string config_fingerprint;
  int points_per_axis = 0;
  int segments = 0;
  int refinement = 0;
  std::vector<NormReportRow> rows;
  std::vector<NormSummary> summaries;

  void sort_rows();
  void build_summaries(const std::vector<NormSpec>& specs);
};

/// Propagates the field family with the frozen-frequency pipeline over the
/// two-sided mesh and reports every configured norm ratio. The potential
/// must satisfy the first-derivative hypothesis (stark, bounded-rough, or a
/// scalar time-modulated combination).
NormReport run_theorem1_experiment(const ExperimentConfig& cfg);

/// Same with the flowed-frequency pipeline for the second-derivative class
/// (harmonic and friends); all weight exponents rho must be zero.
NormReport run_theorem2_experiment(const ExperimentConfig& cfg);

}  // namespace wprop

#endif  // WPROP_EXPERIMENTS_HPP
