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

#ifndef WPROP_PARAMETRIX_HPP
#define WPROP_PARAMETRIX_HPP

#include <memory>
#include <vector>

#include "wprop/clifford.hpp"
#include "wprop/gabor.hpp"
#include "wprop/potentials.hpp"
#include "wprop/window.hpp"

namespace wprop {

/// Which phase-space operator to apply.
///
/// flat family (potential split V = V1 + V2, frozen frequencies):
///   propagator     U1(t,s)
///   symbol_kernel  K_sigma, leftover of the Fourier multiplier
///   smooth_kernel  K_V1, first-order Taylor leftover of the smooth part
///   rough_kernel   K_V2 = -V2(t,.) U1(t,s)
///   kernel_sum     K_sigma + K_V1 + K_V2 in one pass
///
/// flowed family (scalar potential, frequencies follow xi(tau) = xi -
/// int_0^tau grad Q):
///   propagator     U2(t,s)
///   symbol_kernel  K_sigma'
///   smooth_kernel  K_V, second-order Taylor leftover
///   kernel_sum     K_sigma' + K_V
enum class ParametrixOp { propagator, symbol_kernel, smooth_kernel, rough_kernel, kernel_sum };

/// Phase-space synthesis engine behind both approximate propagators.
///
/// Every operator is a quadrature of the form
///
///   sum_{x,xi} w(xi) L(x, y) P(t,s; x, xi) C_f(x, xi) e^(i y.xi)
///   * h^d (pi/L)^d (2pi)^(-d)
///
/// where C_f are (possibly frequency-shifted) STFT rows of f, P is the
/// evolved phase matrix, and L is the window atom g(y-x) or one of the
/// remainder factors. The xi sum is an inverse lattice transform per x, so
/// an application costs O(N^d) FFTs plus an O(N^(2d)) accumulation.
///
/// At coincident times the synthesis collapses to the STFT inversion
/// identity, which is exact on the lattice, so U(s,s) = Id to roundoff.
///
/// Phase matrices:
///  - scalar smooth part: exp(-i int (sigma(xi) + V1)) splits into the
///    closed-form factor cos(dt<xi>) I - i sin(dt<xi>) sigma(xi)/<xi>
///    times a scalar phase;
///  - time-independent matrix part: one Hermitian exponential per (x, xi);
///  - flowed frequencies: the time-ordered exponential, realized as an
///    ordered product of second-order Magnus factors over ceil(16 |t-s|)
///    substeps (a plain exponential of the tau-integral leaves an O(|t-s|^3)
///    ordering defect which the Duhamel correction cannot remove).
///
/// An engine owns FFT plans and scratch; use one instance per thread.
class ParametrixEngine {
 public:
  static std::shared_ptr<ParametrixEngine> flat(const CliffordRep& rep,
                                                const PhaseSpaceGrid& grid,
                                                const Window& window,
                                                const PotentialSplit& split);
  static std::shared_ptr<ParametrixEngine> flowed(const CliffordRep& rep,
                                                  const PhaseSpaceGrid& grid,
                                                  const Window& window,
                                                  const PotentialSpec& potential);

  const CliffordRep& rep() const { return rep_; }
  const PhaseSpaceGrid& grid() const { return grid_; }
  const Window& window() const { return window_; }
  bool is_flowed() const { return flowed_; }
  const PotentialSplit& split() const { return split_; }

  SpinorField apply(ParametrixOp op, double t, double s, const SpinorField& f) const;

  /// Slow direct quadrature over (x, xi, y); the cross-check oracle for the
  /// factorized path. Intended for small lattices.
  SpinorField apply_direct(ParametrixOp op, double t, double s, const SpinorField& f) const;

  /// Closed form of the symbol remainder; xi-independent for this symbol:
  ///   R_sigma(x, y) = -i sum_a alpha_a (d_a g)(y - x).
  Matrix remainder_rsigma(std::size_t x_index, std::size_t y_index) const;

  /// Fourier-quadrature fallback of the same remainder,
  ///   int e^(i(y-x).eta) (sigma(eta+xi) - sigma(xi)) ghat(eta) deta,
  /// valid for any symbol satisfying the growth condition.
  Matrix remainder_rsigma_quadrature(std::size_t x_index, std::size_t y_index,
                                     const double* xi) const;

  /// Max deviation of sampled phase matrices from unitarity.
  double phase_unitarity_defect(double t, double s, int samples) const;

 private:
  ParametrixEngine(const CliffordRep& rep, const PhaseSpaceGrid& grid, const Window& window);

  struct PhaseWork;
  void fill_phase_row(double t, double s, std::size_t x_index, Complex* out) const;
  const std::vector<double>& smooth_pair_table() const;
  void accumulate(ParametrixOp op, double t, std::size_t x_index,
                  const Complex* transformed, SpinorField& out) const;

  CliffordRep rep_;
  PhaseSpaceGrid grid_;
  Window window_;
  bool flowed_ = false;
  PotentialSplit split_;  // flowed engines keep the base potential here

  GaborTransform gabor_;
  int n_ = 2;
  std::vector<double> xs_, xis_, bracket_xi_;
  std::vector<Complex> sigma_flat_;         // sigma(xi_m), row-major n x n per m
  std::vector<Complex> alpha_flat_;         // alpha_0..alpha_d
  std::vector<Complex> commutator_basis_;   // alpha_0 alpha_a and alpha_b alpha_a
  mutable std::vector<double> pair_table_;  // segment-averaged Taylor factors
  mutable bool pair_table_built_ = false;
  mutable std::vector<Complex> row_, transformed_, phase_row_, scratch_;
};

/// Bound operator family at a fixed time pair, the unit the solver and the
/// experiments hand around.
struct ParametrixContext {
  std::shared_ptr<const ParametrixEngine> engine;
  double s = 0.0;
  double t = 0.0;
};

ParametrixContext make_u1_context(const CliffordRep& rep, const PhaseSpaceGrid& grid,
                                  const Window& window, const PotentialSplit& split,
                                  double s, double t);
ParametrixContext make_u2_context(const CliffordRep& rep, const PhaseSpaceGrid& grid,
                                  const Window& window, const PotentialSpec& potential,
                                  double s, double t);

SpinorField apply_U1(const ParametrixContext& ctx, const SpinorField& f);
SpinorField apply_Ksigma(const ParametrixContext& ctx, const SpinorField& f);
SpinorField apply_KV1(const ParametrixContext& ctx, const SpinorField& f);
SpinorField apply_KV2(const ParametrixContext& ctx, const SpinorField& f);
SpinorField apply_U2(const ParametrixContext& ctx, const SpinorField& f);
SpinorField apply_Ksigma_prime(const ParametrixContext& ctx, const SpinorField& f);
SpinorField apply_KV(const ParametrixContext& ctx, const SpinorField& f);
SpinorField apply_kernel_sum(const ParametrixContext& ctx, const SpinorField& f);

}  // namespace wprop

#endif  // WPROP_PARAMETRIX_HPP
