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

#ifndef WPROP_POTENTIALS_HPP
#define WPROP_POTENTIALS_HPP

#include <functional>
#include <vector>

#include "wprop/clifford.hpp"
#include "wprop/gabor.hpp"
#include "wprop/grid.hpp"
#include "wprop/spaces.hpp"

namespace wprop {

enum class PotentialKind { stark, harmonic, bounded_rough, custom };

/// Bounded continuous time factor c(t); potentials are tensor products
/// c(t) V(x), which keeps every time integral in closed form.
enum class TimeModulation { none, cosine, sine };

/// A concrete potential family V(t,x) = c(t) phi(x) S with a scalar profile
/// phi, time factor c, and matrix direction S (identity when scalar).
///
///   stark:         phi(x) = E.x
///   harmonic:      phi(x) = (omega^2/2) |x|^2
///   bounded_rough: phi(x) = amplitude * prod_j sin(kappa x_j)
///
/// Profiles expose exact derivatives through order two. Matrix-valued
/// potentials must be time independent (modulation none): a time-varying
/// matrix direction would make the phase exponential order-sensitive.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::stark;
  int d = 1;

  std::vector<double> field;  ///< stark E
  double omega = 1.0;         ///< harmonic frequency
  double amplitude = 1.0;     ///< bounded_rough amplitude
  double kappa = 1.0;         ///< bounded_rough wavenumber

  TimeModulation modulation = TimeModulation::none;
  double modulation_freq = 1.0;

  /// Empty means scalar (V = phi I_n); otherwise a fixed Hermitian matrix.
  Matrix shape;

  std::function<double(const double*)> custom_profile;
  std::function<double(const double*, int)> custom_gradient;
  std::function<double(const double*, int, int)> custom_hessian;

  bool scalar_shape() const { return shape.size() == 0; }
  bool is_zero() const;

  double profile(const double* x) const;
  double profile_gradient(const double* x, int axis) const;
  double profile_hessian(const double* x, int a1, int a2) const;

  double modulation_value(double t) const;           ///< c(t)
  double modulation_antiderivative(double t) const;  ///< a(t) = int_0^t c
  /// int_s^t c(tau) dtau, closed form.
  double modulation_integral(double s, double t) const {
    return modulation_antiderivative(t) - modulation_antiderivative(s);
  }
  /// int_s^t a(tau) dtau, closed form; drives averaged frequency flows.
  double antiderivative_integral(double s, double t) const;
  /// int_s^t int_s^tau (a(tau) - a(tau')) dtau' dtau, closed form; the
  /// scalar factor of the second Magnus term of the flowed phase.
  double magnus_mu(double s, double t) const;

  Matrix shape_or_identity(int n) const;
  /// V(t, x) as an n x n Hermitian matrix.
  Matrix evaluate(int n, double t, const double* x) const;

  void validate() const;
};

PotentialSpec stark_potential(std::vector<double> field);
PotentialSpec harmonic_potential(int d, double omega);
PotentialSpec rough_potential(int d, double amplitude = 1.0, double kappa = 1.0);

/// V = V1 + V2 with V1 smooth (bounded derivatives from the requested order
/// up) and V2 bounded-rough. Polynomial kinds split as (V, 0); bounded_rough
/// splits by Gaussian mollification of width delta, which for the sine
/// profile is the exact scale factor exp(-d kappa^2 delta^2 / 2).
struct PotentialSplit {
  PotentialSpec base;
  int order = 1;        ///< k: 1 for first-derivative class, 2 for second
  double delta = 0.5;   ///< mollification width (rough kinds)
  double smooth_factor = 1.0;  ///< V1 = smooth_factor * V pointwise

  bool rough_is_zero() const { return smooth_factor == 1.0; }

  double v1_profile(const double* x) const { return smooth_factor * base.profile(x); }
  double v1_gradient(const double* x, int axis) const {
    return smooth_factor * base.profile_gradient(x, axis);
  }
  double v1_hessian(const double* x, int a1, int a2) const {
    return smooth_factor * base.profile_hessian(x, a1, a2);
  }
  double v2_profile(const double* x) const {
    return (1.0 - smooth_factor) * base.profile(x);
  }
  Matrix v1_value(int n, double t, const double* x) const;
  Matrix v2_value(int n, double t, const double* x) const;
};

PotentialSplit decompose(const PotentialSpec& potential, int order, double delta = 0.5);

/// int_s^t grad_x Q(tau, x) dtau for scalar potentials; the frequency-flow
/// increment of the flowed parametrix. Throws for matrix-valued potentials.
std::vector<double> gradient_flow(const PotentialSpec& q, double t, double s,
                                  const double* x);

/// Discrete M^(inf,1)_(0,|rho|) norm of the rough part at time t (scalar
/// profile scaled by the max entry of the matrix direction).
double rough_part_norm(const PotentialSplit& split, double t, double rho,
                       const GaborTransform& gt, const Window& g);

/// Hypothesis checks for the two pipelines.
bool theorem1_admissible(const PotentialSpec& v);
bool theorem2_admissible(const PotentialSpec& v);

}  // namespace wprop

#endif  // WPROP_POTENTIALS_HPP
