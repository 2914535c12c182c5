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

#include "wprop/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wprop/errors.hpp"
#include "wprop/numerics.hpp"

namespace wprop {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value '" + v + "' for " + key);
  }
}

long parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value '" + v + "' for " + key);
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_field(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v[i]);
  }
  return out;
}

}  // namespace

std::string format_norm_exponent(double p) {
  if (std::isinf(p)) return "inf";
  return format_double(p);
}

NormSpec parse_norm_spec(const std::string& item) {
  const std::vector<std::string> parts = split(item, ',');
  if (parts.size() != 5) throw ConfigError("config: norm spec needs flavor,p,q,r,rho: " + item);
  NormSpec spec;
  if (parts[0] == "modulation") {
    spec.flavor = NormFlavor::modulation;
  } else if (parts[0] == "wiener") {
    spec.flavor = NormFlavor::wiener;
  } else {
    throw ConfigError("config: unknown norm flavor '" + parts[0] + "'");
  }
  auto expo = [](const std::string& s) {
    return s == "inf" ? kInfExponent : std::stod(s);
  };
  try {
    spec.p = expo(parts[1]);
    spec.q = expo(parts[2]);
    spec.r = std::stod(parts[3]);
    spec.rho = std::stod(parts[4]);
  } catch (const std::exception&) {
    throw ConfigError("config: bad norm spec numbers in '" + item + "'");
  }
  spec.validate();
  return spec;
}

std::vector<NormSpec> ExperimentConfig::default_norms() {
  std::vector<NormSpec> specs;
  const double exps[2] = {1.0, kInfExponent};
  for (double p : exps)
    for (double q : exps) {
      specs.push_back({NormFlavor::wiener, p, q, 0.0, 0.0});
      specs.push_back({NormFlavor::wiener, p, q, 1.0, 0.0});
      specs.push_back({NormFlavor::wiener, p, q, 0.0, 1.0});
    }
  return specs;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "grid.dimension") {
    dimension = static_cast<int>(parse_int(value, key));
  } else if (key == "grid.points_per_axis") {
    points_per_axis = static_cast<int>(parse_int(value, key));
  } else if (key == "grid.box_half_width") {
    box_half_width = parse_double(value, key);
  } else if (key == "clifford.variant") {
    clifford_variant = value;
  } else if (key == "window.width") {
    window_width = parse_double(value, key);
  } else if (key == "potential.kind") {
    potential_kind = value;
  } else if (key == "potential.field") {
    potential_field.clear();
    for (const std::string& item : split(value, ','))
      potential_field.push_back(parse_double(item, key));
  } else if (key == "potential.omega") {
    potential_omega = parse_double(value, key);
  } else if (key == "potential.amplitude") {
    potential_amplitude = parse_double(value, key);
  } else if (key == "potential.kappa") {
    potential_kappa = parse_double(value, key);
  } else if (key == "potential.modulation") {
    potential_modulation = value;
  } else if (key == "potential.modulation_freq") {
    potential_modulation_freq = parse_double(value, key);
  } else if (key == "split.delta") {
    split_delta = parse_double(value, key);
  } else if (key == "time.horizon") {
    horizon = parse_double(value, key);
  } else if (key == "time.segments") {
    segments = static_cast<int>(parse_int(value, key));
  } else if (key == "norms") {
    norms.clear();
    for (const std::string& item : split(value, ';'))
      if (!item.empty()) norms.push_back(parse_norm_spec(item));
    if (norms.empty()) throw ConfigError("config: empty norm list");
  } else if (key == "data.seed") {
    seed = static_cast<std::uint64_t>(parse_int(value, key));
  } else if (key == "data.count") {
    field_count = static_cast<int>(parse_int(value, key));
  } else if (key == "data.bandlimit") {
    bandlimit = parse_double(value, key);
  } else if (key == "field.kind") {
    field_kind = value;
  } else if (key == "field.center_x") {
    field_center_x = parse_double(value, key);
  } else if (key == "field.center_xi") {
    field_center_xi = parse_double(value, key);
  } else if (key == "field.width") {
    field_width = parse_double(value, key);
  } else if (key == "picard.tol") {
    picard_tol = parse_double(value, key);
  } else if (key == "picard.max_iter") {
    picard_max_iter = static_cast<int>(parse_int(value, key));
  } else if (key == "solver.pipeline") {
    pipeline = value;
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " has no '='");
    cfg.set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

std::string ExperimentConfig::to_string() const {
  std::ostringstream os;
  os << "clifford.variant = " << clifford_variant << "\n";
  os << "data.bandlimit = " << format_double(bandlimit) << "\n";
  os << "data.count = " << field_count << "\n";
  os << "data.seed = " << seed << "\n";
  os << "field.center_x = " << format_double(field_center_x) << "\n";
  os << "field.center_xi = " << format_double(field_center_xi) << "\n";
  os << "field.kind = " << field_kind << "\n";
  os << "field.width = " << format_double(field_width) << "\n";
  os << "grid.box_half_width = " << format_double(box_half_width) << "\n";
  os << "grid.dimension = " << dimension << "\n";
  os << "grid.points_per_axis = " << points_per_axis << "\n";
  std::string normstr;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    if (i) normstr += ";";
    normstr += norms[i].label();
  }
  os << "norms = " << normstr << "\n";
  os << "picard.max_iter = " << picard_max_iter << "\n";
  os << "picard.tol = " << format_double(picard_tol) << "\n";
  os << "potential.amplitude = " << format_double(potential_amplitude) << "\n";
  os << "potential.field = " << format_field(potential_field) << "\n";
  os << "potential.kappa = " << format_double(potential_kappa) << "\n";
  os << "potential.kind = " << potential_kind << "\n";
  os << "potential.modulation = " << potential_modulation << "\n";
  os << "potential.modulation_freq = " << format_double(potential_modulation_freq) << "\n";
  os << "potential.omega = " << format_double(potential_omega) << "\n";
  os << "solver.pipeline = " << pipeline << "\n";
  os << "split.delta = " << format_double(split_delta) << "\n";
  os << "time.horizon = " << format_double(horizon) << "\n";
  os << "time.segments = " << segments << "\n";
  os << "window.width = " << format_double(window_width) << "\n";
  return os.str();
}

std::string ExperimentConfig::fingerprint() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(to_string())));
  return buf;
}

void ExperimentConfig::refine(int k) {
  for (int i = 0; i < k; ++i) {
    points_per_axis *= 2;
    segments *= 2;
  }
}

PhaseSpaceGrid ExperimentConfig::make_grid() const {
  return PhaseSpaceGrid(dimension, points_per_axis, box_half_width);
}

CliffordRep ExperimentConfig::make_rep() const {
  if (clifford_variant == "generic") return build_clifford(dimension);
  if (clifford_variant == "dirac")
    return build_clifford(dimension, CliffordVariant::dirac);
  throw ConfigError("config: unknown clifford variant '" + clifford_variant + "'");
}

PotentialSpec ExperimentConfig::make_potential() const {
  PotentialSpec v;
  if (potential_kind == "stark") {
    std::vector<double> field = potential_field;
    field.resize(static_cast<std::size_t>(dimension), 0.0);
    v = stark_potential(field);
  } else if (potential_kind == "harmonic") {
    v = harmonic_potential(dimension, potential_omega);
  } else if (potential_kind == "bounded_rough") {
    v = rough_potential(dimension, potential_amplitude, potential_kappa);
  } else {
    throw ConfigError("config: unknown potential kind '" + potential_kind + "'");
  }
  if (potential_modulation == "none") {
    v.modulation = TimeModulation::none;
  } else if (potential_modulation == "cos") {
    v.modulation = TimeModulation::cosine;
  } else if (potential_modulation == "sin") {
    v.modulation = TimeModulation::sine;
  } else {
    throw ConfigError("config: unknown modulation '" + potential_modulation + "'");
  }
  v.modulation_freq = potential_modulation_freq;
  v.validate();
  return v;
}

}  // namespace wprop
