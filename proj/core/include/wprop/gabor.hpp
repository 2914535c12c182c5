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

#ifndef WPROP_GABOR_HPP
#define WPROP_GABOR_HPP

#include <string>
#include <vector>

#include "wprop/fourier.hpp"
#include "wprop/grid.hpp"
#include "wprop/window.hpp"

namespace wprop {

/// Samples of V_g f(x, xi) on the phase-space lattice. Layout:
/// value (x_flat, xi_flat, comp) at values[(x_flat * P + xi_flat) * n + comp]
/// with xi axes in FFT bin order.
struct StftCoefficients {
  PhaseSpaceGrid grid;
  int n = 1;
  std::string window_id;
  std::vector<Complex> values;

  Complex& at(std::size_t x, std::size_t xi, int c) {
    return values[(x * grid.point_count() + xi) * static_cast<std::size_t>(n) + c];
  }
  const Complex& at(std::size_t x, std::size_t xi, int c) const {
    return values[(x * grid.point_count() + xi) * static_cast<std::size_t>(n) + c];
  }
  bool is_finite() const;
};

/// The short-time Fourier transform
///
///   V_g f(x, xi) = integral conj(g(y-x)) f(y) e^(-i y.xi) dy,
///
/// its adjoint
///
///   V_g* F(x) = double-integral g(x-y) F(y, xi) e^(+i x.xi) dy dbar(xi),
///   dbar(xi) = (2pi)^(-d) dxi,
///
/// and the inversion identity f = ||g||^(-2) V_g*[V_g f], realized as torus
/// quadratures. On the lattice the composition V_g* V_g collapses exactly
/// (the xi sum is a full period), so the inversion residual is pure
/// roundoff for unit-norm windows.
///
/// Holds FFT plans; one instance per thread.
class GaborTransform {
 public:
  explicit GaborTransform(const PhaseSpaceGrid& grid);

  const PhaseSpaceGrid& grid() const { return fft_.grid(); }
  const FourierTransformer& transformer() const { return fft_; }

  /// Full coefficient array; quadratic memory in the lattice size.
  StftCoefficients stft(const SpinorField& f, const Window& g) const;

  /// One x-row of coefficients, optionally at uniformly shifted frequencies:
  /// out[m*n + c] = V_g f(x_k, xi_m - shift)_c for every bin m.
  /// A null shift means the plain lattice row. out must hold P*n entries.
  void stft_row(const SpinorField& f, const Window& g, std::size_t x_index,
                const double* freq_shift, Complex* out) const;

  /// Direct evaluation of the defining sum at a lattice x and an arbitrary
  /// frequency; exact for the periodized trigonometric interpolant.
  void stft_at(const SpinorField& f, const Window& g, std::size_t x_index,
               const double* xi, Complex* out) const;

  SpinorField adjoint(const StftCoefficients& F, const Window& g) const;

  /// || V_g*[V_g f] / ||g||^2 - f ||_2 / ||f||_2.
  double inversion_residual(const SpinorField& f, const Window& g) const;

 private:
  void check_window(const SpinorField& f, const Window& g) const;

  FourierTransformer fft_;
  mutable std::vector<Complex> row_;
};

}  // namespace wprop

#endif  // WPROP_GABOR_HPP
