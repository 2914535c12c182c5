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

#ifndef WPROP_GRID_HPP
#define WPROP_GRID_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace wprop {

using Complex = std::complex<double>;

constexpr int kMaxGridDim = 4;

/// Japanese-bracket weight <x> = (1 + |x|^2)^(1/2), raised to the power r.
double peetre_weight(const double* x, int d, double r);
double peetre_weight(const std::vector<double>& x, double r);

/// Periodized computational domain: the box [-L, L)^d sampled on N points
/// per axis, together with its dual frequency lattice.
///
///   x_k  = -L + k h,        h = 2L/N,       k = 0..N-1 per axis
///   xi_m = m pi/L,          m = -N/2..N/2-1 per axis
///
/// so that h * (pi/L) * N = 2pi exactly. Frequency axes are stored in FFT
/// bin order b = m mod N; signed indices are recovered on access.
class PhaseSpaceGrid {
 public:
  PhaseSpaceGrid() = default;
  PhaseSpaceGrid(int d, int points_per_axis, double box_half_width);

  int dim() const { return d_; }
  int points_per_axis() const { return n_axis_; }
  double box_half_width() const { return length_; }

  double spacing() const { return 2.0 * length_ / n_axis_; }        ///< h
  double freq_spacing() const { return M_PI / length_; }            ///< pi/L
  double max_frequency() const { return freq_spacing() * (n_axis_ / 2); }

  std::size_t point_count() const { return point_count_; }          ///< N^d

  double cell_volume_x() const;    ///< h^d
  double cell_volume_xi() const;   ///< (pi/L)^d

  /// Spatial coordinates of the flat index (row-major, axis 0 slowest).
  void x_at(std::size_t flat, double* out) const;
  /// Frequency coordinates of the flat index interpreted in FFT bin order.
  void xi_at(std::size_t flat, double* out) const;
  /// Signed frequency integer of an FFT bin on one axis.
  int signed_index(int bin) const { return bin < n_axis_ / 2 ? bin : bin - n_axis_; }
  /// Parity (-1)^m of the signed index; equals (-1)^bin for even N.
  static int bin_parity(int bin) { return (bin & 1) ? -1 : 1; }

  void unflatten(std::size_t flat, int* idx) const;
  std::size_t flatten(const int* idx) const;

  /// Flat index of the lattice point at (per-axis) index offsets j - k,
  /// wrapped to the torus; used to sample functions of y - x.
  std::size_t wrapped_difference(std::size_t j, std::size_t k) const;

  bool operator==(const PhaseSpaceGrid& o) const {
    return d_ == o.d_ && n_axis_ == o.n_axis_ && length_ == o.length_;
  }

 private:
  int d_ = 0;
  int n_axis_ = 0;
  double length_ = 0.0;
  std::size_t point_count_ = 0;
};

/// A C^n-valued function sampled on the spatial lattice. Storage is
/// point-major: component c of lattice point k lives at values[k*n + c].
struct SpinorField {
  PhaseSpaceGrid grid;
  int n = 1;
  std::vector<Complex> values;

  SpinorField() = default;
  SpinorField(const PhaseSpaceGrid& g, int components)
      : grid(g), n(components), values(g.point_count() * static_cast<std::size_t>(components)) {}

  Complex& at(std::size_t point, int comp) { return values[point * static_cast<std::size_t>(n) + comp]; }
  const Complex& at(std::size_t point, int comp) const {
    return values[point * static_cast<std::size_t>(n) + comp];
  }

  bool is_finite() const;
};

/// sqrt( h^d sum |f|_{l2(C^n)}^2 ) -- the quadrature L^2 norm.
double l2_norm(const SpinorField& f);
/// ||f - g||_2 / ||g||_2 with the convention 0/0 = 0.
double rel_l2_error(const SpinorField& f, const SpinorField& g);

SpinorField operator+(const SpinorField& a, const SpinorField& b);
SpinorField operator-(const SpinorField& a, const SpinorField& b);
SpinorField operator*(Complex c, const SpinorField& f);
void axpy(Complex a, const SpinorField& x, SpinorField& y);  ///< y += a x

/// Largest |f|_{C^n} over the outermost lattice shell divided by the
/// largest |f|_{C^n} overall. Guards the periodization assumption.
double boundary_mass(const SpinorField& f);

/// Throws BoundaryMassError if boundary_mass(f) exceeds 1e-8.
void require_box_concentrated(const SpinorField& f, const char* where);

}  // namespace wprop

#endif  // WPROP_GRID_HPP
