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

#include "wprop/gabor.hpp"

#include <cmath>

#include "wprop/errors.hpp"

namespace wprop {

bool StftCoefficients::is_finite() const {
  for (const Complex& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

GaborTransform::GaborTransform(const PhaseSpaceGrid& grid) : fft_(grid) {
  row_.resize(grid.point_count());
}

void GaborTransform::check_window(const SpinorField& f, const Window& g) const {
  if (!(g.grid() == f.grid) || !(f.grid == grid()))
    throw InvalidWindowError("GaborTransform: field and window must share the grid");
}

StftCoefficients GaborTransform::stft(const SpinorField& f, const Window& g) const {
  check_window(f, g);
  const PhaseSpaceGrid& gr = grid();
  const std::size_t count = gr.point_count();
  if (count * count * static_cast<std::size_t>(f.n) > (std::size_t{1} << 25))
    throw CapacityError("stft: full coefficient array exceeds desk scale; use stft_row");

  StftCoefficients out;
  out.grid = gr;
  out.n = f.n;
  out.window_id = g.id();
  out.values.resize(count * count * static_cast<std::size_t>(f.n));
  for (std::size_t k = 0; k < count; ++k)
    stft_row(f, g, k, nullptr, &out.values[k * count * static_cast<std::size_t>(f.n)]);
  return out;
}

void GaborTransform::stft_row(const SpinorField& f, const Window& g, std::size_t x_index,
                              const double* freq_shift, Complex* out) const {
  check_window(f, g);
  const PhaseSpaceGrid& gr = grid();
  const std::size_t count = gr.point_count();
  const double hx = gr.cell_volume_x();
  const int n = f.n;

  // Modulating the integrand by e^(+i y.shift) turns lattice bins into
  // samples at xi_m - shift.
  std::vector<Complex> mod;
  if (freq_shift != nullptr) {
    mod.resize(count);
    double y[kMaxGridDim];
    for (std::size_t j = 0; j < count; ++j) {
      gr.x_at(j, y);
      double phase = 0.0;
      for (int a = 0; a < gr.dim(); ++a) phase += y[a] * freq_shift[a];
      mod[j] = std::polar(1.0, phase);
    }
  }

  for (int c = 0; c < n; ++c) {
    for (std::size_t j = 0; j < count; ++j) {
      const Complex win = std::conj(g.samples()[gr.wrapped_difference(j, x_index)]);
      Complex v = win * f.at(j, c);
      if (freq_shift != nullptr) v *= mod[j];
      row_[j] = v;
    }
    fft_.raw_forward(row_.data());
    for (std::size_t m = 0; m < count; ++m)
      out[m * static_cast<std::size_t>(n) + c] = row_[m] * (hx * fft_.parity(m));
  }
}

void GaborTransform::stft_at(const SpinorField& f, const Window& g, std::size_t x_index,
                             const double* xi, Complex* out) const {
  check_window(f, g);
  const PhaseSpaceGrid& gr = grid();
  const std::size_t count = gr.point_count();
  const double hx = gr.cell_volume_x();
  double y[kMaxGridDim];
  for (int c = 0; c < f.n; ++c) out[c] = Complex(0.0, 0.0);
  for (std::size_t j = 0; j < count; ++j) {
    gr.x_at(j, y);
    double phase = 0.0;
    for (int a = 0; a < gr.dim(); ++a) phase += y[a] * xi[a];
    const Complex e = std::polar(1.0, -phase);
    const Complex win = std::conj(g.samples()[gr.wrapped_difference(j, x_index)]);
    for (int c = 0; c < f.n; ++c) out[c] += win * f.at(j, c) * e;
  }
  for (int c = 0; c < f.n; ++c) out[c] *= hx;
}

SpinorField GaborTransform::adjoint(const StftCoefficients& F, const Window& g) const {
  if (!(F.grid == grid()))
    throw InvalidWindowError("GaborTransform::adjoint: grid mismatch");
  if (!F.is_finite()) throw std::invalid_argument("adjoint: non-finite coefficients");
  const PhaseSpaceGrid& gr = grid();
  const std::size_t count = gr.point_count();
  const int n = F.n;
  const double weight = gr.cell_volume_x() * gr.cell_volume_xi() *
                        std::pow(2.0 * M_PI, -gr.dim());

  SpinorField out(gr, n);
  std::vector<Complex> synth(count * static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < count; ++k) {
    // Per source point x_k, one inverse transform gives
    // sum_m F(x_k, xi_m) e^(+i x_j.xi_m) at every target x_j.
    for (int c = 0; c < n; ++c) {
      for (std::size_t m = 0; m < count; ++m)
        row_[m] = F.at(k, m, c) * static_cast<double>(fft_.parity(m));
      fft_.raw_backward(row_.data());
      for (std::size_t j = 0; j < count; ++j)
        synth[j * static_cast<std::size_t>(n) + c] = row_[j];
    }
    for (std::size_t j = 0; j < count; ++j) {
      const Complex win = g.samples()[gr.wrapped_difference(j, k)];
      for (int c = 0; c < n; ++c)
        out.at(j, c) += weight * win * synth[j * static_cast<std::size_t>(n) + c];
    }
  }
  return out;
}

double GaborTransform::inversion_residual(const SpinorField& f, const Window& g) const {
  g.require_unit_norm("inversion_residual");
  const StftCoefficients coeffs = stft(f, g);
  const SpinorField back = adjoint(coeffs, g);
  return rel_l2_error(back, f);
}

}  // namespace wprop
