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

#include "wprop/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wprop/errors.hpp"

namespace wprop {

double peetre_weight(const double* x, int d, double r) {
  double s = 0.0;
  for (int a = 0; a < d; ++a) s += x[a] * x[a];
  return std::pow(1.0 + s, 0.5 * r);
}

double peetre_weight(const std::vector<double>& x, double r) {
  return peetre_weight(x.data(), static_cast<int>(x.size()), r);
}

PhaseSpaceGrid::PhaseSpaceGrid(int d, int points_per_axis, double box_half_width)
    : d_(d), n_axis_(points_per_axis), length_(box_half_width) {
  if (d < 1 || d > kMaxGridDim)
    throw std::invalid_argument("PhaseSpaceGrid: dimension must be in [1, 4]");
  if (points_per_axis < 4 || points_per_axis % 2 != 0)
    throw std::invalid_argument("PhaseSpaceGrid: points_per_axis must be even and >= 4");
  if (!(box_half_width > 0.0))
    throw std::invalid_argument("PhaseSpaceGrid: box_half_width must be positive");
  point_count_ = 1;
  for (int a = 0; a < d; ++a) {
    if (point_count_ > (std::size_t{1} << 26) / static_cast<std::size_t>(points_per_axis))
      throw CapacityError("PhaseSpaceGrid: lattice exceeds desk scale");
    point_count_ *= static_cast<std::size_t>(points_per_axis);
  }
}

double PhaseSpaceGrid::cell_volume_x() const {
  return std::pow(spacing(), d_);
}

double PhaseSpaceGrid::cell_volume_xi() const {
  return std::pow(freq_spacing(), d_);
}

void PhaseSpaceGrid::unflatten(std::size_t flat, int* idx) const {
  for (int a = d_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n_axis_));
    flat /= static_cast<std::size_t>(n_axis_);
  }
}

std::size_t PhaseSpaceGrid::flatten(const int* idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < d_; ++a)
    flat = flat * static_cast<std::size_t>(n_axis_) + static_cast<std::size_t>(idx[a]);
  return flat;
}

void PhaseSpaceGrid::x_at(std::size_t flat, double* out) const {
  int idx[kMaxGridDim];
  unflatten(flat, idx);
  const double h = spacing();
  for (int a = 0; a < d_; ++a) out[a] = -length_ + idx[a] * h;
}

void PhaseSpaceGrid::xi_at(std::size_t flat, double* out) const {
  int idx[kMaxGridDim];
  unflatten(flat, idx);
  const double dxi = freq_spacing();
  for (int a = 0; a < d_; ++a) out[a] = signed_index(idx[a]) * dxi;
}

std::size_t PhaseSpaceGrid::wrapped_difference(std::size_t j, std::size_t k) const {
  int ja[kMaxGridDim], ka[kMaxGridDim], out[kMaxGridDim];
  unflatten(j, ja);
  unflatten(k, ka);
  // x_{N/2} = 0, so index N/2 + (j-k) mod N carries the wrapped difference.
  for (int a = 0; a < d_; ++a) {
    int diff = ja[a] - ka[a] + n_axis_ / 2;
    diff %= n_axis_;
    if (diff < 0) diff += n_axis_;
    out[a] = diff;
  }
  return flatten(out);
}

bool SpinorField::is_finite() const {
  for (const Complex& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double l2_norm(const SpinorField& f) {
  double s = 0.0;
  for (const Complex& v : f.values) s += std::norm(v);
  return std::sqrt(s * f.grid.cell_volume_x());
}

double rel_l2_error(const SpinorField& f, const SpinorField& g) {
  if (f.values.size() != g.values.size())
    throw std::invalid_argument("rel_l2_error: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    num += std::norm(f.values[i] - g.values[i]);
    den += std::norm(g.values[i]);
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(num / den);
}

SpinorField operator+(const SpinorField& a, const SpinorField& b) {
  SpinorField out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

SpinorField operator-(const SpinorField& a, const SpinorField& b) {
  SpinorField out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

SpinorField operator*(Complex c, const SpinorField& f) {
  SpinorField out = f;
  for (Complex& v : out.values) v *= c;
  return out;
}

void axpy(Complex a, const SpinorField& x, SpinorField& y) {
  for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += a * x.values[i];
}

double boundary_mass(const SpinorField& f) {
  const PhaseSpaceGrid& g = f.grid;
  const int N = g.points_per_axis();
  double overall = 0.0, shell = 0.0;
  int idx[kMaxGridDim];
  for (std::size_t k = 0; k < g.point_count(); ++k) {
    double mag = 0.0;
    for (int c = 0; c < f.n; ++c) mag = std::max(mag, std::abs(f.at(k, c)));
    overall = std::max(overall, mag);
    g.unflatten(k, idx);
    bool on_shell = false;
    for (int a = 0; a < g.dim(); ++a)
      if (idx[a] == 0 || idx[a] == N - 1) on_shell = true;
    if (on_shell) shell = std::max(shell, mag);
  }
  if (overall == 0.0) return 0.0;
  return shell / overall;
}

void require_box_concentrated(const SpinorField& f, const char* where) {
  const double mass = boundary_mass(f);
  if (mass > 1e-8)
    throw BoundaryMassError(std::string(where) +
                            ": field carries boundary mass " + std::to_string(mass) +
                            " (> 1e-8); enlarge the box or shrink the data");
}

}  // namespace wprop
