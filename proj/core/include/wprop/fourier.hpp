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

#ifndef WPROP_FOURIER_HPP
#define WPROP_FOURIER_HPP

#include <memory>
#include <vector>

#include "wprop/grid.hpp"

namespace wprop {

/// Lattice Fourier transforms under the asymmetric normalization
///
///   Ff(xi)      = (2pi)^(-d) integral f(x) e^(-i x.xi) dx
///   F^(-1)f(x)  =            integral f(xi) e^(+i x.xi) dxi
///
/// realized as trapezoidal torus quadratures: the forward transform carries
/// weight h^d (2pi)^(-d), the inverse weight (pi/L)^d, and the lattice
/// offsets contribute a (-1)^m phase per axis. With N points per axis the
/// pair inverts exactly (h * pi/L * N = 2pi).
///
/// One instance owns FFTW plans for a fixed grid. Instances are not safe
/// for concurrent use; create one per worker thread.
class FourierTransformer {
 public:
  explicit FourierTransformer(const PhaseSpaceGrid& grid);
  ~FourierTransformer();

  FourierTransformer(FourierTransformer&&) noexcept;
  FourierTransformer& operator=(FourierTransformer&&) noexcept;
  FourierTransformer(const FourierTransformer&) = delete;
  FourierTransformer& operator=(const FourierTransformer&) = delete;

  const PhaseSpaceGrid& grid() const { return grid_; }

  /// Unnormalized lattice DFT sum_k x_k e^(-2pi i k.b/N), in place on a
  /// contiguous buffer of grid().point_count() entries.
  void raw_forward(Complex* data) const;
  /// Unnormalized inverse sum_b X_b e^(+2pi i k.b/N), in place.
  void raw_backward(Complex* data) const;

  /// (-1)^(sum of bin indices) of a flat lattice index.
  int parity(std::size_t flat) const { return parity_[flat]; }

  /// Samples of Ff on the dual lattice (FFT bin order per axis).
  SpinorField forward(const SpinorField& f) const;
  /// Samples of F^(-1)F on the spatial lattice.
  SpinorField inverse(const SpinorField& F) const;

 private:
  PhaseSpaceGrid grid_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
  std::vector<signed char> parity_;
  mutable std::vector<Complex> scratch_;
};

}  // namespace wprop

#endif  // WPROP_FOURIER_HPP
