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

#include "wprop/potentials.hpp"

#include <cmath>
#include <stdexcept>

#include "wprop/errors.hpp"
#include "wprop/numerics.hpp"

namespace wprop {

bool PotentialSpec::is_zero() const {
  switch (kind) {
    case PotentialKind::stark: {
      for (double e : field)
        if (e != 0.0) return false;
      return true;
    }
    case PotentialKind::harmonic:
      return omega == 0.0;
    case PotentialKind::bounded_rough:
      return amplitude == 0.0;
    case PotentialKind::custom:
      return false;
  }
  return false;
}

double PotentialSpec::profile(const double* x) const {
  switch (kind) {
    case PotentialKind::stark: {
      double s = 0.0;
      for (int a = 0; a < d; ++a) s += field[static_cast<std::size_t>(a)] * x[a];
      return s;
    }
    case PotentialKind::harmonic: {
      double s = 0.0;
      for (int a = 0; a < d; ++a) s += x[a] * x[a];
      return 0.5 * omega * omega * s;
    }
    case PotentialKind::bounded_rough: {
      double p = amplitude;
      for (int a = 0; a < d; ++a) p *= std::sin(kappa * x[a]);
      return p;
    }
    case PotentialKind::custom:
      return custom_profile(x);
  }
  return 0.0;
}

double PotentialSpec::profile_gradient(const double* x, int axis) const {
  switch (kind) {
    case PotentialKind::stark:
      return field[static_cast<std::size_t>(axis)];
    case PotentialKind::harmonic:
      return omega * omega * x[axis];
    case PotentialKind::bounded_rough: {
      double p = amplitude * kappa * std::cos(kappa * x[axis]);
      for (int a = 0; a < d; ++a)
        if (a != axis) p *= std::sin(kappa * x[a]);
      return p;
    }
    case PotentialKind::custom:
      return custom_gradient(x, axis);
  }
  return 0.0;
}

double PotentialSpec::profile_hessian(const double* x, int a1, int a2) const {
  switch (kind) {
    case PotentialKind::stark:
      return 0.0;
    case PotentialKind::harmonic:
      return a1 == a2 ? omega * omega : 0.0;
    case PotentialKind::bounded_rough: {
      if (a1 == a2) return -kappa * kappa * profile(x);
      double p = amplitude * kappa * kappa * std::cos(kappa * x[a1]) * std::cos(kappa * x[a2]);
      for (int a = 0; a < d; ++a)
        if (a != a1 && a != a2) p *= std::sin(kappa * x[a]);
      return p;
    }
    case PotentialKind::custom:
      return custom_hessian(x, a1, a2);
  }
  return 0.0;
}

double PotentialSpec::modulation_value(double t) const {
  switch (modulation) {
    case TimeModulation::none:
      return 1.0;
    case TimeModulation::cosine:
      return std::cos(modulation_freq * t);
    case TimeModulation::sine:
      return std::sin(modulation_freq * t);
  }
  return 1.0;
}

double PotentialSpec::modulation_antiderivative(double t) const {
  const double nu = modulation_freq;
  switch (modulation) {
    case TimeModulation::none:
      return t;
    case TimeModulation::cosine:
      return std::sin(nu * t) / nu;
    case TimeModulation::sine:
      return (1.0 - std::cos(nu * t)) / nu;
  }
  return t;
}

double PotentialSpec::antiderivative_integral(double s, double t) const {
  const double nu = modulation_freq;
  switch (modulation) {
    case TimeModulation::none:
      return 0.5 * (t * t - s * s);
    case TimeModulation::cosine:
      return (std::cos(nu * s) - std::cos(nu * t)) / (nu * nu);
    case TimeModulation::sine:
      return (t - s) / nu - (std::sin(nu * t) - std::sin(nu * s)) / (nu * nu);
  }
  return 0.5 * (t * t - s * s);
}

double PotentialSpec::magnus_mu(double s, double t) const {
  // mu = int_s^t [ a(tau)(tau - s) - int_s^tau a ] dtau; the integrand is a
  // closed form, so a 12-node rule is exact for the polynomial case and at
  // quadrature precision for the trigonometric ones.
  const GaussLegendreRule rule = gauss_legendre(12, s, t);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double tau = rule.nodes[i];
    acc += rule.weights[i] *
           (modulation_antiderivative(tau) * (tau - s) - antiderivative_integral(s, tau));
  }
  return acc;
}

Matrix PotentialSpec::shape_or_identity(int n) const {
  if (scalar_shape()) return Matrix::Identity(n, n);
  if (shape.rows() != n || shape.cols() != n)
    throw HypothesisError("PotentialSpec: matrix direction has the wrong order");
  return shape;
}

Matrix PotentialSpec::evaluate(int n, double t, const double* x) const {
  return (modulation_value(t) * profile(x)) * shape_or_identity(n);
}

void PotentialSpec::validate() const {
  if (d < 1) throw std::invalid_argument("PotentialSpec: dimension must be positive");
  if (kind == PotentialKind::stark && static_cast<int>(field.size()) != d)
    throw std::invalid_argument("PotentialSpec: stark field must have one entry per axis");
  if (kind == PotentialKind::custom &&
      (!custom_profile || !custom_gradient || !custom_hessian))
    throw std::invalid_argument("PotentialSpec: custom kind needs all three evaluators");
  if (!scalar_shape()) {
    if (shape.rows() != shape.cols())
      throw std::invalid_argument("PotentialSpec: matrix direction must be square");
    if (max_entry_norm(shape - shape.adjoint()) > 1e-12)
      throw HypothesisError("PotentialSpec: matrix direction must be Hermitian");
    if (modulation != TimeModulation::none)
      throw HypothesisError(
          "PotentialSpec: matrix-valued potentials must be time independent");
  }
  if (modulation != TimeModulation::none && modulation_freq == 0.0)
    throw std::invalid_argument("PotentialSpec: modulation frequency must be nonzero");
}

PotentialSpec stark_potential(std::vector<double> field) {
  PotentialSpec v;
  v.kind = PotentialKind::stark;
  v.d = static_cast<int>(field.size());
  v.field = std::move(field);
  v.validate();
  return v;
}

PotentialSpec harmonic_potential(int d, double omega) {
  PotentialSpec v;
  v.kind = PotentialKind::harmonic;
  v.d = d;
  v.omega = omega;
  v.validate();
  return v;
}

PotentialSpec rough_potential(int d, double amplitude, double kappa) {
  PotentialSpec v;
  v.kind = PotentialKind::bounded_rough;
  v.d = d;
  v.amplitude = amplitude;
  v.kappa = kappa;
  v.validate();
  return v;
}

Matrix PotentialSplit::v1_value(int n, double t, const double* x) const {
  return (base.modulation_value(t) * v1_profile(x)) * base.shape_or_identity(n);
}

Matrix PotentialSplit::v2_value(int n, double t, const double* x) const {
  if (rough_is_zero()) return Matrix::Zero(n, n);
  return (base.modulation_value(t) * v2_profile(x)) * base.shape_or_identity(n);
}

PotentialSplit decompose(const PotentialSpec& potential, int order, double delta) {
  potential.validate();
  if (order != 1 && order != 2)
    throw std::invalid_argument("decompose: order must be 1 or 2");
  if (order == 2 && !potential.scalar_shape())
    throw HypothesisError(
        "decompose: the second-order class requires a scalar potential Q I_n");

  PotentialSplit split;
  split.base = potential;
  split.order = order;
  split.delta = delta;

  switch (potential.kind) {
    case PotentialKind::stark:
      split.smooth_factor = 1.0;  // derivatives of order >= 1 already bounded
      break;
    case PotentialKind::harmonic:
      if (order == 1)
        throw HypothesisError(
            "decompose: harmonic growth is outside the first-derivative class");
      split.smooth_factor = 1.0;
      break;
    case PotentialKind::bounded_rough: {
      if (!(delta > 0.0)) throw std::invalid_argument("decompose: delta must be positive");
      // Gaussian mollification of the sine profile is an exact scale factor.
      const double k = potential.kappa;
      split.smooth_factor = std::exp(-0.5 * potential.d * k * k * delta * delta);
      break;
    }
    case PotentialKind::custom:
      throw HypothesisError("decompose: custom potentials carry no built-in split");
  }
  return split;
}

std::vector<double> gradient_flow(const PotentialSpec& q, double t, double s,
                                  const double* x) {
  if (!q.scalar_shape())
    throw HypothesisError("gradient_flow: the frequency flow needs a scalar potential");
  const double factor = q.modulation_integral(s, t);
  std::vector<double> shift(static_cast<std::size_t>(q.d));
  for (int a = 0; a < q.d; ++a)
    shift[static_cast<std::size_t>(a)] = factor * q.profile_gradient(x, a);
  return shift;
}

double rough_part_norm(const PotentialSplit& split, double t, double rho,
                       const GaborTransform& gt, const Window& g) {
  if (split.rough_is_zero()) return 0.0;
  const PhaseSpaceGrid& gr = gt.grid();
  SpinorField profile(gr, 1);
  double x[kMaxGridDim];
  for (std::size_t k = 0; k < gr.point_count(); ++k) {
    gr.x_at(k, x);
    profile.at(k, 0) = split.v2_profile(x);
  }
  const NormSpec spec{NormFlavor::modulation, kInfExponent, 1.0, 0.0, std::abs(rho)};
  const double scalar_norm = phase_space_norm(gt, profile, g, spec);
  const double shape_scale =
      split.base.scalar_shape() ? 1.0 : max_entry_norm(split.base.shape);
  return std::abs(split.base.modulation_value(t)) * shape_scale * scalar_norm;
}

bool theorem1_admissible(const PotentialSpec& v) {
  if (v.kind == PotentialKind::harmonic) return v.is_zero();
  if (v.kind == PotentialKind::custom) return false;
  return true;  // stark and bounded_rough; matrix shapes are time independent
}

bool theorem2_admissible(const PotentialSpec& v) {
  if (!v.scalar_shape()) return false;
  return v.kind == PotentialKind::stark || v.kind == PotentialKind::harmonic ||
         v.kind == PotentialKind::bounded_rough;
}

}  // namespace wprop
