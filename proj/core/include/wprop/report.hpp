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

#ifndef WPROP_REPORT_HPP
#define WPROP_REPORT_HPP

#include <string>

#include "wprop/experiments.hpp"

namespace wprop {

/// Writes the rows as CSV with the exact header
///   t,flavor,p,q,r,rho,norm_u0,norm_ut,ratio
/// infinite exponents as the literal `inf`, numbers as %.12g, RFC-4180
/// quoting where a field would need it, one trailing newline per row.
/// Byte-identical across runs for identical reports.
void write_report_csv(const NormReport& report, const std::string& path);

/// Sidecar metadata (config fingerprint, grid, refinement) as key=value
/// lines; kept out of the CSV so the column contract stays exact.
void write_report_metadata(const NormReport& report, const std::string& path);

/// Emits a gnuplot command file keyed to the CSV columns.
void write_plot_script(const std::string& csv_filename, const std::string& path);

/// Parses a CSV produced by write_report_csv.
NormReport read_report_csv(const std::string& path);

std::string csv_quote(const std::string& field);

}  // namespace wprop

#endif  // WPROP_REPORT_HPP
