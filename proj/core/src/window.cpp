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

#include "wprop/window.hpp"

#include <cmath>
#include <sstream>

#include "wprop/errors.hpp"
#include "wprop/fourier.hpp"

namespace wprop {

Window Window::gaussian(const PhaseSpaceGrid& grid, double width) {
  if (!(width > 0.0)) throw InvalidWindowError("Window::gaussian: width must be positive");
  Window w;
  w.grid_ = grid;
  w.samples_.resize(grid.point_count());
  double x[kMaxGridDim];
  for (std::size_t k = 0; k < grid.point_count(); ++k) {
    grid.x_at(k, x);
    double q = 0.0;
    for (int a = 0; a < grid.dim(); ++a) q += x[a] * x[a];
    w.samples_[k] = std::exp(-q / (2.0 * width * width));
  }
  std::ostringstream id;
  id << "gaussian(width=" << width << ")";
  w.id_ = id.str();
  w.finalize();
  w.normalize();
  return w;
}

Window Window::from_samples(const PhaseSpaceGrid& grid, std::vector<Complex> samples,
                            std::string id) {
  if (samples.size() != grid.point_count())
    throw InvalidWindowError("Window::from_samples: sample count mismatch");
  Window w;
  w.grid_ = grid;
  w.samples_ = std::move(samples);
  w.id_ = std::move(id);
  w.finalize();
  return w;
}

void Window::finalize() {
  double s = 0.0;
  for (const Complex& v : samples_) s += std::norm(v);
  l2_norm_ = std::sqrt(s * grid_.cell_volume_x());
  if (l2_norm_ == 0.0) throw InvalidWindowError("Window: all samples vanish");

  // d_j g via the multiplier i xi_j, exact for the trigonometric interpolant.
  FourierTransformer fft(grid_);
  SpinorField g(grid_, 1);
  g.values = samples_;
  const SpinorField ghat = fft.forward(g);
  derivatives_.assign(static_cast<std::size_t>(grid_.dim()), {});
  double xi[kMaxGridDim];
  for (int a = 0; a < grid_.dim(); ++a) {
    SpinorField dhat(grid_, 1);
    for (std::size_t m = 0; m < grid_.point_count(); ++m) {
      grid_.xi_at(m, xi);
      dhat.at(m, 0) = Complex(0.0, xi[a]) * ghat.at(m, 0);
    }
    derivatives_[static_cast<std::size_t>(a)] = fft.inverse(dhat).values;
  }
}

void Window::normalize() {
  const double inv = 1.0 / l2_norm_;
  for (Complex& v : samples_) v *= inv;
  for (auto& deriv : derivatives_)
    for (Complex& v : deriv) v *= inv;
  l2_norm_ = 1.0;
}

void Window::require_unit_norm(const char* where) const {
  if (std::abs(l2_norm_ - 1.0) > 1e-12)
    throw InvalidWindowError(std::string(where) + ": window must be L2-normalized");
}

}  // namespace wprop
