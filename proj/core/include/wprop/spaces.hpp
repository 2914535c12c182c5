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

#ifndef WPROP_SPACES_HPP
#define WPROP_SPACES_HPP

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "wprop/gabor.hpp"

namespace wprop {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

enum class NormFlavor { modulation, wiener };

/// Mixed weighted norm of STFT coefficients:
///   modulation: || <x>^r <xi>^rho |V_g f|_{C^n} ||_{L^p_x} then L^q_xi
///   wiener:     same weights, L^q_xi inside, L^p_x outside.
/// Exponents live in [1, inf]; inf is handled as a lattice maximum with no
/// cell-volume weight, finite p as (sum |.|^p cellvol)^(1/p).
struct NormSpec {
  NormFlavor flavor = NormFlavor::wiener;
  double p = 2.0;
  double q = 2.0;
  double r = 0.0;
  double rho = 0.0;

  void validate() const;
  std::string label() const;  ///< e.g. "wiener,inf,1,0,0"
};

/// Several norms of one field in a single pass over the STFT rows.
/// When p == q both flavors reduce over the identical flat summand set, and
/// the same accumulation path is used, so they agree exactly.
std::vector<double> phase_space_norms(const GaborTransform& gt, const SpinorField& f,
                                      const Window& g, const std::vector<NormSpec>& specs);

double phase_space_norm(const GaborTransform& gt, const SpinorField& f, const Window& g,
                        const NormSpec& spec);

double modulation_norm(const GaborTransform& gt, const SpinorField& f, const Window& g,
                       const NormSpec& spec);

double wiener_norm(const GaborTransform& gt, const SpinorField& f, const Window& g,
                   const NormSpec& spec);

/// Resamples f(theta x) on the same grid through the trigonometric
/// interpolant (exact for band-limited fields).
SpinorField dilate(const FourierTransformer& fft, const SpinorField& f, double theta);

/// ||D_theta f|| / ||f|| in M^(inf,1) per theta. theta outside (0, 1] is
/// rejected.
struct DilationReport {
  std::vector<double> thetas;
  std::vector<double> ratios;
  double sup_ratio = 0.0;
};

DilationReport dilation_bound_check(const GaborTransform& gt, const SpinorField& f,
                                    const Window& g, const std::vector<double>& thetas);

/// Segment average int_0^1 f(x + theta (y-x)) w(theta) dtheta by 8-node
/// Gauss-Legendre quadrature (exact through polynomial degree 15).
/// weight_power selects w(theta) = (1-theta)^weight_power, power 0 or 1.
double taylor_average(const std::function<double(const double*)>& f, const double* x,
                      const double* y, int d, int weight_power = 1);

}  // namespace wprop

#endif  // WPROP_SPACES_HPP
