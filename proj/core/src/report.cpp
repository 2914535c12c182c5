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

#include "wprop/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wprop/errors.hpp"

namespace wprop {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string exponent(double p) { return std::isinf(p) ? "inf" : num(p); }

double parse_exponent(const std::string& s) {
  if (s == "inf") return kInfExponent;
  return std::stod(s);
}

}  // namespace

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_report_csv(const NormReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("report: cannot write " + path);
  out << "t,flavor,p,q,r,rho,norm_u0,norm_ut,ratio\n";
  for (const NormReportRow& row : report.rows) {
    const std::string flavor =
        row.spec.flavor == NormFlavor::modulation ? "modulation" : "wiener";
    out << csv_quote(num(row.t)) << ',' << csv_quote(flavor) << ','
        << csv_quote(exponent(row.spec.p)) << ',' << csv_quote(exponent(row.spec.q)) << ','
        << csv_quote(num(row.spec.r)) << ',' << csv_quote(num(row.spec.rho)) << ','
        << csv_quote(num(row.norm_u0)) << ',' << csv_quote(num(row.norm_ut)) << ','
        << csv_quote(num(row.ratio)) << '\n';
  }
}

void write_report_metadata(const NormReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("report: cannot write " + path);
  out << "experiment = " << report.experiment << "\n";
  out << "config = " << report.config_fingerprint << "\n";
  out << "grid.points_per_axis = " << report.points_per_axis << "\n";
  out << "time.segments = " << report.segments << "\n";
  out << "refinement = " << report.refinement << "\n";
  for (const NormSummary& s : report.summaries)
    out << "sup_ratio[" << s.spec.label() << "] = " << num(s.sup_ratio) << "\n";
}

void write_plot_script(const std::string& csv_filename, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("report: cannot write " + path);
  out << "# norm-ratio plot; run: gnuplot -p " << path << "\n";
  out << "set datafile separator ','\n";
  out << "set xlabel 't'\n";
  out << "set ylabel 'norm ratio'\n";
  out << "set key off\n";
  out << "plot '" << csv_filename << "' every ::1 using 1:9 with points pt 7 ps 0.4\n";
}

NormReport read_report_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("report: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("report: empty file " + path);
  if (line != "t,flavor,p,q,r,rho,norm_u0,norm_ut,ratio")
    throw ConfigError("report: unexpected header in " + path);

  NormReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      const char c = i < line.size() ? line[i] : ',';
      if (quoted) {
        if (c == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            cell += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          cell += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    if (cells.size() != 9) throw ConfigError("report: malformed row in " + path);
    NormReportRow row;
    row.t = std::stod(cells[0]);
    if (cells[1] == "modulation") {
      row.spec.flavor = NormFlavor::modulation;
    } else if (cells[1] == "wiener") {
      row.spec.flavor = NormFlavor::wiener;
    } else {
      throw ConfigError("report: unknown flavor '" + cells[1] + "'");
    }
    row.spec.p = parse_exponent(cells[2]);
    row.spec.q = parse_exponent(cells[3]);
    row.spec.r = std::stod(cells[4]);
    row.spec.rho = std::stod(cells[5]);
    row.norm_u0 = std::stod(cells[6]);
    row.norm_ut = std::stod(cells[7]);
    row.ratio = std::stod(cells[8]);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace wprop
