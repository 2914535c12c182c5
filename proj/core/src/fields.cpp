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

#include "wprop/fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "wprop/errors.hpp"
#include "wprop/fourier.hpp"

namespace wprop {

namespace {

std::vector<Complex> unit_spinor(int n, const std::vector<Complex>& spinor) {
  std::vector<Complex> w(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  if (spinor.empty()) {
    w[0] = Complex(1.0, 0.0);
    return w;
  }
  if (static_cast<int>(spinor.size()) != n)
    throw std::invalid_argument("field spinor has wrong length");
  double norm = 0.0;
  for (const Complex& c : spinor) norm += std::norm(c);
  if (norm == 0.0) throw std::invalid_argument("field spinor vanishes");
  const double inv = 1.0 / std::sqrt(norm);
  for (int c = 0; c < n; ++c) w[static_cast<std::size_t>(c)] = spinor[static_cast<std::size_t>(c)] * inv;
  return w;
}

void normalize_l2(SpinorField& f) {
  const double norm = l2_norm(f);
  if (norm == 0.0) throw std::invalid_argument("field is identically zero");
  const double inv = 1.0 / norm;
  for (Complex& v : f.values) v *= inv;
}

std::vector<Complex> random_spinor(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> w(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) w[static_cast<std::size_t>(c)] = Complex(gauss(rng), gauss(rng));
  return w;
}

double snap(double value, double unit) { return std::round(value / unit) * unit; }

}  // namespace

SpinorField gaussian_packet(const PhaseSpaceGrid& grid, int n, const double* x0,
                            const double* xi0, double width,
                            const std::vector<Complex>& spinor) {
  const std::vector<Complex> w = unit_spinor(n, spinor);
  SpinorField f(grid, n);
  double x[kMaxGridDim];
  for (std::size_t k = 0; k < grid.point_count(); ++k) {
    grid.x_at(k, x);
    double q = 0.0, phase = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
      const double dx = x[a] - x0[a];
      q += dx * dx;
      phase += x[a] * xi0[a];
    }
    const Complex env = std::polar(std::exp(-q / (2.0 * width * width)), phase);
    for (int c = 0; c < n; ++c) f.at(k, c) = env * w[static_cast<std::size_t>(c)];
  }
  normalize_l2(f);
  return f;
}

SpinorField hermite_field(const PhaseSpaceGrid& grid, int n, int order,
                          const std::vector<Complex>& spinor) {
  if (order < 0 || order > 4)
    throw std::invalid_argument("hermite_field: order must be 0..4");
  const std::vector<Complex> w = unit_spinor(n, spinor);
  auto hermite = [order](double t) {
    switch (order) {
      case 0: return 1.0;
      case 1: return 2.0 * t;
      case 2: return 4.0 * t * t - 2.0;
      case 3: return 8.0 * t * t * t - 12.0 * t;
      default: return 16.0 * t * t * t * t - 48.0 * t * t + 12.0;
    }
  };
  SpinorField f(grid, n);
  double x[kMaxGridDim];
  for (std::size_t k = 0; k < grid.point_count(); ++k) {
    grid.x_at(k, x);
    double q = 0.0;
    for (int a = 0; a < grid.dim(); ++a) q += x[a] * x[a];
    const double env = hermite(x[0]) * std::exp(-q / 2.0);
    for (int c = 0; c < n; ++c) f.at(k, c) = env * w[static_cast<std::size_t>(c)];
  }
  normalize_l2(f);
  return f;
}

SpinorField tent_field(const PhaseSpaceGrid& grid, int n, const double* x0, double a,
                       double cutoff, const std::vector<Complex>& spinor) {
  if (!(a > 0.0) || !(cutoff > 0.0))
    throw std::invalid_argument("tent_field: width and cutoff must be positive");
  const std::vector<Complex> w = unit_spinor(n, spinor);
  const FourierTransformer fft(grid);

  // hat(tent)(xi) = prod_a a sinc^2(a xi_a / 2) e^(-i x0.xi) under the
  // forward convention, apodized by a raised-cosine rolloff between
  // cutoff/2 and cutoff per axis.
  auto sinc = [](double z) { return z == 0.0 ? 1.0 : std::sin(z) / z; };
  auto rolloff = [cutoff](double u) {
    const double t = std::abs(u);
    if (t <= 0.5 * cutoff) return 1.0;
    if (t >= cutoff) return 0.0;
    const double c = std::cos(M_PI * (t - 0.5 * cutoff) / cutoff);
    return c * c;
  };

  SpinorField hat(grid, n);
  double xi[kMaxGridDim];
  const double scale = std::pow(2.0 * M_PI, -grid.dim());
  for (std::size_t m = 0; m < grid.point_count(); ++m) {
    grid.xi_at(m, xi);
    double amp = scale, phase = 0.0;
    for (int ax = 0; ax < grid.dim(); ++ax) {
      const double s = sinc(0.5 * a * xi[ax]);
      amp *= a * s * s * rolloff(xi[ax]);
      phase -= x0[ax] * xi[ax];
    }
    const Complex v = std::polar(amp, phase);
    for (int c = 0; c < n; ++c) hat.at(m, c) = v * w[static_cast<std::size_t>(c)];
  }
  SpinorField f = fft.inverse(hat);
  normalize_l2(f);
  return f;
}

std::vector<SpinorField> standard_field_family(const PhaseSpaceGrid& grid, int n,
                                               std::uint64_t seed, int count,
                                               double bandlimit) {
  if (count < 1) throw std::invalid_argument("standard_field_family: count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double L = grid.box_half_width();
  const double x_unit = L / 16.0;
  const double xi_unit = grid.freq_spacing();
  const int d = grid.dim();

  auto seeded_center = [&](double* x0, double* xi0) {
    for (int a = 0; a < d; ++a) {
      x0[a] = snap(uni(rng) * L / 3.0, x_unit);
      xi0[a] = snap(uni(rng) * std::min(3.0, bandlimit / 2.0), xi_unit);
    }
  };

  std::vector<SpinorField> family;
  family.reserve(static_cast<std::size_t>(count));
  double x0[kMaxGridDim], xi0[kMaxGridDim], zero[kMaxGridDim] = {0, 0, 0, 0};

  // 5 packets; remember their centers for the variant groups.
  std::vector<std::vector<double>> centers_x, centers_xi;
  std::vector<std::vector<Complex>> spins;
  for (int i = 0; i < 5; ++i) {
    seeded_center(x0, xi0);
    const auto spin = random_spinor(n, rng);
    centers_x.emplace_back(x0, x0 + d);
    centers_xi.emplace_back(xi0, xi0 + d);
    spins.push_back(spin);
    if (static_cast<int>(family.size()) < count)
      family.push_back(gaussian_packet(grid, n, x0, xi0, 1.0, spin));
  }
  for (int order = 0; order < 3 && static_cast<int>(family.size()) < count; ++order)
    family.push_back(hermite_field(grid, n, order, random_spinor(n, rng)));
  for (int i = 0; i < 2 && static_cast<int>(family.size()) < count; ++i) {
    for (int a = 0; a < d; ++a) x0[a] = snap(uni(rng) * L / 4.0, x_unit);
    const double a_width = 1.5 + 0.5 * i;
    family.push_back(tent_field(grid, n, x0, a_width, bandlimit, random_spinor(n, rng)));
  }
  // translated variants of the packets
  for (int i = 0; i < 5 && static_cast<int>(family.size()) < count; ++i) {
    for (int a = 0; a < d; ++a) {
      x0[a] = centers_x[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] +
              snap(uni(rng) * L / 8.0, x_unit);
      xi0[a] = centers_xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
    }
    family.push_back(gaussian_packet(grid, n, x0, xi0, 1.0, spins[static_cast<std::size_t>(i)]));
  }
  // modulated variants of the packets
  for (int i = 0; i < 5 && static_cast<int>(family.size()) < count; ++i) {
    for (int a = 0; a < d; ++a) {
      x0[a] = centers_x[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
      xi0[a] = centers_xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] +
               snap(uni(rng) * 2.0, xi_unit);
    }
    family.push_back(gaussian_packet(grid, n, x0, xi0, 1.0, spins[static_cast<std::size_t>(i)]));
  }
  // extras beyond 20: more seeded packets
  while (static_cast<int>(family.size()) < count) {
    seeded_center(x0, xi0);
    family.push_back(gaussian_packet(grid, n, x0, xi0, 1.0, random_spinor(n, rng)));
  }
  (void)zero;
  return family;
}

SpinorField config_field(const ExperimentConfig& cfg, const PhaseSpaceGrid& grid, int n) {
  double x0[kMaxGridDim], xi0[kMaxGridDim];
  for (int a = 0; a < grid.dim(); ++a) {
    x0[a] = cfg.field_center_x;
    xi0[a] = cfg.field_center_xi;
  }
  if (cfg.field_kind == "gaussian")
    return gaussian_packet(grid, n, x0, xi0, cfg.field_width);
  if (cfg.field_kind == "hermite0") return hermite_field(grid, n, 0);
  if (cfg.field_kind == "hermite1") return hermite_field(grid, n, 1);
  if (cfg.field_kind == "hermite2") return hermite_field(grid, n, 2);
  if (cfg.field_kind == "tent")
    return tent_field(grid, n, x0, cfg.field_width, cfg.bandlimit);
  throw ConfigError("config: unknown field kind '" + cfg.field_kind + "'");
}

}  // namespace wprop
