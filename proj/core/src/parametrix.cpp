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

#include "wprop/parametrix.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

#include "wprop/errors.hpp"
#include "wprop/numerics.hpp"

namespace wprop {

namespace {

const Complex kI{0.0, 1.0};

inline void matvec(int n, const Complex* m, const Complex* v, Complex* out) {
  for (int c = 0; c < n; ++c) {
    Complex acc{0.0, 0.0};
    for (int b = 0; b < n; ++b) acc += m[c * n + b] * v[b];
    out[c] = acc;
  }
}

inline void matmul(int n, const Complex* a, const Complex* b, Complex* out) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex acc{0.0, 0.0};
      for (int k = 0; k < n; ++k) acc += a[i * n + k] * b[k * n + j];
      out[i * n + j] = acc;
    }
}

// exp(-i H) for Hermitian H. n = 2 uses the Pauli decomposition
// H = c0 I + b.sigma, exp(-iH) = e^(-i c0)(cos|b| I - i sin|b| b.sigma/|b|);
// larger orders go through an eigendecomposition.
void expm_neg_i_hermitian(int n, const Complex* h, Complex* out) {
  if (n == 2) {
    const double c0 = 0.5 * (h[0].real() + h[3].real());
    const double b3 = 0.5 * (h[0].real() - h[3].real());
    const double b1 = h[1].real();
    const double b2 = -h[1].imag();
    const double r = std::sqrt(b1 * b1 + b2 * b2 + b3 * b3);
    const double cr = std::cos(r);
    const double snc = r > 1e-150 ? std::sin(r) / r : 1.0;
    const Complex e0 = std::polar(1.0, -c0);
    const Complex mi_snc = -kI * snc;
    out[0] = e0 * (cr + mi_snc * b3);
    out[1] = e0 * (mi_snc * Complex(b1, -b2));
    out[2] = e0 * (mi_snc * Complex(b1, b2));
    out[3] = e0 * (cr - mi_snc * b3);
    return;
  }
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = h[i * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXcd phases(n);
  for (int i = 0; i < n; ++i) phases(i) = std::polar(1.0, -es.eigenvalues()(i));
  Eigen::MatrixXcd r = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i * n + j] = r(i, j);
}

}  // namespace

ParametrixEngine::ParametrixEngine(const CliffordRep& rep, const PhaseSpaceGrid& grid,
                                   const Window& window)
    : rep_(rep), grid_(grid), window_(window), gabor_(grid), n_(rep.n) {
  window_.require_unit_norm("ParametrixEngine");
  if (rep_.d != grid_.dim())
    throw std::invalid_argument("ParametrixEngine: representation/grid dimension mismatch");

  const std::size_t count = grid_.point_count();
  const int d = grid_.dim();
  const int n = n_;
  xs_.resize(count * static_cast<std::size_t>(d));
  xis_.resize(count * static_cast<std::size_t>(d));
  bracket_xi_.resize(count);
  sigma_flat_.resize(count * static_cast<std::size_t>(n * n));
  for (std::size_t k = 0; k < count; ++k) {
    grid_.x_at(k, &xs_[k * static_cast<std::size_t>(d)]);
    grid_.xi_at(k, &xis_[k * static_cast<std::size_t>(d)]);
    const double* xi = &xis_[k * static_cast<std::size_t>(d)];
    bracket_xi_[k] = peetre_weight(xi, d, 1.0);
    Matrix sig = rep_.alpha(0);
    for (int a = 0; a < d; ++a) sig += xi[a] * rep_.alpha(a + 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        sigma_flat_[k * static_cast<std::size_t>(n * n) + i * n + j] = sig(i, j);
  }

  alpha_flat_.resize(static_cast<std::size_t>(d + 1) * n * n);
  for (int a = 0; a <= d; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        alpha_flat_[(static_cast<std::size_t>(a) * n + i) * n + j] = rep_.alpha(a)(i, j);

  // Products alpha_j alpha_a (j = 0..d, a = 1..d) feeding the commutator
  // term of the flowed phase.
  commutator_basis_.resize(static_cast<std::size_t>(d + 1) * d * n * n);
  for (int j = 0; j <= d; ++j)
    for (int a = 1; a <= d; ++a) {
      const Matrix prod = rep_.alpha(j) * rep_.alpha(a);
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          commutator_basis_[((static_cast<std::size_t>(j) * d + (a - 1)) *
                                 static_cast<std::size_t>(n) +
                             i) *
                                static_cast<std::size_t>(n) +
                            l] = prod(i, l);
    }

  row_.resize(count * static_cast<std::size_t>(n));
  transformed_.resize(count * static_cast<std::size_t>(n));
  phase_row_.resize(count * static_cast<std::size_t>(n * n));
  scratch_.resize(count);
}

std::shared_ptr<ParametrixEngine> ParametrixEngine::flat(const CliffordRep& rep,
                                                         const PhaseSpaceGrid& grid,
                                                         const Window& window,
                                                         const PotentialSplit& split) {
  auto engine = std::shared_ptr<ParametrixEngine>(new ParametrixEngine(rep, grid, window));
  engine->flowed_ = false;
  engine->split_ = split;
  split.base.validate();
  if (!split.base.scalar_shape() && split.base.modulation != TimeModulation::none)
    throw HypothesisError("ParametrixEngine: matrix smooth parts must be time independent");
  return engine;
}

std::shared_ptr<ParametrixEngine> ParametrixEngine::flowed(const CliffordRep& rep,
                                                           const PhaseSpaceGrid& grid,
                                                           const Window& window,
                                                           const PotentialSpec& potential) {
  potential.validate();
  if (!theorem2_admissible(potential))
    throw HypothesisError(
        "ParametrixEngine: the flowed propagator needs a scalar potential with bounded "
        "second derivatives");
  auto engine = std::shared_ptr<ParametrixEngine>(new ParametrixEngine(rep, grid, window));
  engine->flowed_ = true;
  engine->split_.base = potential;
  engine->split_.order = 2;
  engine->split_.smooth_factor = 1.0;
  return engine;
}

// Phase matrices P(t,s; x_k, xi_m) for every bin m at one lattice point k.
void ParametrixEngine::fill_phase_row(double t, double s, std::size_t k, Complex* out) const {
  const std::size_t count = grid_.point_count();
  const int n = n_;
  const int d = grid_.dim();
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  const double dt = t - s;
  const PotentialSpec& base = split_.base;
  const double* x = &xs_[k * static_cast<std::size_t>(d)];

  if (!flowed_) {
    const double gamma = base.modulation_integral(s, t) * split_.smooth_factor;
    if (base.scalar_shape()) {
      // exp(-i dt sigma(xi)) in closed form times the scalar smooth phase.
      const Complex scalar = std::polar(1.0, -gamma * base.profile(x));
      for (std::size_t m = 0; m < count; ++m) {
        const double br = bracket_xi_[m];
        const double cr = std::cos(dt * br);
        const double sn = std::sin(dt * br) / br;
        const Complex* sig = &sigma_flat_[m * nn];
        Complex* p = out + m * nn;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            Complex v = -kI * sn * sig[i * n + j];
            if (i == j) v += cr;
            p[i * n + j] = scalar * v;
          }
      }
      return;
    }
    // Time-independent matrix smooth part: one Hermitian exponential per bin.
    const double phi = gamma * base.profile(x);
    std::vector<Complex> h(nn);
    for (std::size_t m = 0; m < count; ++m) {
      const Complex* sig = &sigma_flat_[m * nn];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          h[static_cast<std::size_t>(i) * n + j] =
              dt * sig[i * n + j] + phi * base.shape(i, j);
      expm_neg_i_hermitian(n, h.data(), out + m * nn);
    }
    return;
  }

  // Flowed phase: ordered product of second-order Magnus factors.
  const int pieces = std::max(1, static_cast<int>(std::ceil(16.0 * std::abs(dt))));
  double grad[kMaxGridDim];
  for (int a = 0; a < d; ++a) grad[a] = base.profile_gradient(x, a);
  const Complex scalar = std::polar(1.0, -base.modulation_integral(s, t) * base.profile(x));

  std::vector<double> abar(static_cast<std::size_t>(pieces)), mu(static_cast<std::size_t>(pieces));
  std::vector<double> sub_dt(static_cast<std::size_t>(pieces));
  for (int i = 0; i < pieces; ++i) {
    const double si = s + dt * i / pieces;
    const double ti = s + dt * (i + 1) / pieces;
    sub_dt[static_cast<std::size_t>(i)] = ti - si;
    abar[static_cast<std::size_t>(i)] = base.antiderivative_integral(si, ti) / (ti - si);
    mu[static_cast<std::size_t>(i)] = base.magnus_mu(si, ti);
  }

  std::vector<Complex> h(nn), factor(nn), acc(nn), tmp(nn), comm(nn);
  for (std::size_t m = 0; m < count; ++m) {
    const double* xi = &xis_[m * static_cast<std::size_t>(d)];

    // C = -i [sigma(xi), G.alpha] =
    //   -2i sum_a G_a (alpha_0 alpha_a + sum_{b != a} xi_b alpha_b alpha_a).
    std::fill(comm.begin(), comm.end(), Complex(0.0, 0.0));
    for (int a = 1; a <= d; ++a) {
      const double g = grad[a - 1];
      if (g == 0.0) continue;
      const Complex* p0 = &commutator_basis_[(static_cast<std::size_t>(0) * d + (a - 1)) * nn];
      for (std::size_t e = 0; e < nn; ++e) comm[e] += g * p0[e];
      for (int b = 1; b <= d; ++b) {
        if (b == a) continue;
        const Complex* pb = &commutator_basis_[(static_cast<std::size_t>(b) * d + (a - 1)) * nn];
        const double w = g * xi[b - 1];
        for (std::size_t e = 0; e < nn; ++e) comm[e] += w * pb[e];
      }
    }
    for (std::size_t e = 0; e < nn; ++e) comm[e] *= Complex(0.0, -2.0);

    for (int i = 0; i < pieces; ++i) {
      const double ddt = sub_dt[static_cast<std::size_t>(i)];
      const double ab = abar[static_cast<std::size_t>(i)];
      // H = ddt sigma(xi - abar G) + mu/2 C
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          Complex v = alpha_flat_[(static_cast<std::size_t>(0) * n + r) * static_cast<std::size_t>(n) + c];
          for (int a = 1; a <= d; ++a)
            v += (xi[a - 1] - ab * grad[a - 1]) *
                 alpha_flat_[(static_cast<std::size_t>(a) * n + r) * static_cast<std::size_t>(n) + c];
          h[static_cast<std::size_t>(r) * n + c] =
              ddt * v + 0.5 * mu[static_cast<std::size_t>(i)] * comm[static_cast<std::size_t>(r) * n + c];
        }
      expm_neg_i_hermitian(n, h.data(), factor.data());
      if (i == 0) {
        std::copy(factor.begin(), factor.end(), acc.begin());
      } else {
        matmul(n, factor.data(), acc.data(), tmp.data());
        std::swap(acc, tmp);
      }
    }
    Complex* p = out + m * nn;
    for (std::size_t e = 0; e < nn; ++e) p[e] = scalar * acc[e];
  }
}

// Segment-averaged Taylor factors, independent of the time pair:
//   flat:   int_0^1       sum_a  d_a phi(x + th (y-x)) (y-x)_a        dth
//   flowed: int_0^1 (1-th) sum_ab d_ab phi(x + th (y-x)) (y-x)_a (y-x)_b dth
// on true (unwrapped) differences; the window factor suppresses pairs near
// the wrap seam.
const std::vector<double>& ParametrixEngine::smooth_pair_table() const {
  if (pair_table_built_) return pair_table_;
  const std::size_t count = grid_.point_count();
  const int d = grid_.dim();
  const PotentialSpec& base = split_.base;
  static const GaussLegendreRule rule = gauss_legendre(8, 0.0, 1.0);

  pair_table_.assign(count * count, 0.0);
  double point[kMaxGridDim], delta[kMaxGridDim];
  for (std::size_t k = 0; k < count; ++k) {
    const double* xk = &xs_[k * static_cast<std::size_t>(d)];
    for (std::size_t j = 0; j < count; ++j) {
      const double* xj = &xs_[j * static_cast<std::size_t>(d)];
      for (int a = 0; a < d; ++a) delta[a] = xj[a] - xk[a];
      double acc = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double th = rule.nodes[q];
        for (int a = 0; a < d; ++a) point[a] = xk[a] + th * delta[a];
        double val = 0.0;
        if (!flowed_) {
          for (int a = 0; a < d; ++a) val += base.profile_gradient(point, a) * delta[a];
          acc += rule.weights[q] * val;
        } else {
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
              val += base.profile_hessian(point, a, b) * delta[a] * delta[b];
          acc += rule.weights[q] * (1.0 - th) * val;
        }
      }
      pair_table_[k * count + j] = acc;
    }
  }
  pair_table_built_ = true;
  return pair_table_;
}

void ParametrixEngine::accumulate(ParametrixOp op, double t, std::size_t k,
                                  const Complex* transformed, SpinorField& out) const {
  const std::size_t count = grid_.point_count();
  const int n = n_;
  const int d = grid_.dim();
  const PotentialSpec& base = split_.base;
  const double weight = grid_.cell_volume_x() * grid_.cell_volume_xi() *
                        std::pow(2.0 * M_PI, -d);
  const double ct = base.modulation_value(t);
  const bool need_symbol = op == ParametrixOp::symbol_kernel || op == ParametrixOp::kernel_sum;
  const bool need_smooth = op == ParametrixOp::smooth_kernel || op == ParametrixOp::kernel_sum;
  const bool need_rough = !flowed_ && op == ParametrixOp::kernel_sum && !split_.rough_is_zero();
  const bool need_prop = op == ParametrixOp::propagator;
  const double* pair = (need_smooth) ? smooth_pair_table().data() : nullptr;

  const double* xk = &xs_[k * static_cast<std::size_t>(d)];
  double flow_t[kMaxGridDim] = {0.0, 0.0, 0.0, 0.0};
  if (flowed_) {
    const double at = base.modulation_antiderivative(t);
    for (int a = 0; a < d; ++a) flow_t[a] = at * base.profile_gradient(xk, a);
  }

  const bool scalar_shape = base.scalar_shape();
  Complex shaped[64];  // n <= 8 on grids
  Complex symbol_mat[64];

  for (std::size_t j = 0; j < count; ++j) {
    const std::size_t diff = grid_.wrapped_difference(j, k);
    const Complex gval = window_.samples()[diff];
    const Complex* aj = transformed + j * static_cast<std::size_t>(n);
    Complex* oj = &out.at(j, 0);

    // weight times the flowed plane-wave correction e^(-i (y-x).F_t).
    Complex base_factor{weight, 0.0};
    if (flowed_) {
      const double* xj = &xs_[j * static_cast<std::size_t>(d)];
      double phase = 0.0;
      for (int a = 0; a < d; ++a) phase += (xj[a] - xk[a]) * flow_t[a];
      base_factor = std::polar(weight, -phase);
    }
    const Complex atom = base_factor * gval;

    if (need_prop) {
      for (int c = 0; c < n; ++c) oj[c] += atom * aj[c];
      continue;
    }

    if (need_symbol) {
      // -R_sigma = +i sum_a alpha_a (d_a g)(y-x), applied left of the phase.
      for (int e = 0; e < n * n; ++e) symbol_mat[e] = Complex(0.0, 0.0);
      for (int a = 0; a < d; ++a) {
        const Complex dg = kI * window_.derivative(a)[diff];
        const Complex* al = &alpha_flat_[(static_cast<std::size_t>(a + 1) * n) * static_cast<std::size_t>(n)];
        for (int e = 0; e < n * n; ++e) symbol_mat[e] += dg * al[e];
      }
      matvec(n, symbol_mat, aj, shaped);
      for (int c = 0; c < n; ++c) oj[c] += base_factor * shaped[c];
    }

    if (need_smooth) {
      const double avg = pair[k * count + j];
      const Complex factor = atom * (-ct * split_.smooth_factor * avg);
      if (scalar_shape) {
        for (int c = 0; c < n; ++c) oj[c] += factor * aj[c];
      } else {
        for (int c = 0; c < n; ++c) {
          Complex acc{0.0, 0.0};
          for (int b = 0; b < n; ++b) acc += base.shape(c, b) * aj[b];
          oj[c] += factor * acc;
        }
      }
    }

    if (need_rough) {
      const double* xj = &xs_[j * static_cast<std::size_t>(d)];
      const double v2 = ct * (1.0 - split_.smooth_factor) * base.profile(xj);
      const Complex factor = atom * (-v2);
      if (scalar_shape) {
        for (int c = 0; c < n; ++c) oj[c] += factor * aj[c];
      } else {
        for (int c = 0; c < n; ++c) {
          Complex acc{0.0, 0.0};
          for (int b = 0; b < n; ++b) acc += base.shape(c, b) * aj[b];
          oj[c] += factor * acc;
        }
      }
    }
  }
}

SpinorField ParametrixEngine::apply(ParametrixOp op, double t, double s,
                                    const SpinorField& f) const {
  if (!(f.grid == grid_)) throw std::invalid_argument("ParametrixEngine: grid mismatch");
  if (f.n != n_) throw std::invalid_argument("ParametrixEngine: spinor order mismatch");
  require_box_concentrated(f, "ParametrixEngine::apply");
  if (op == ParametrixOp::rough_kernel) {
    if (flowed_)
      throw std::invalid_argument("ParametrixEngine: the flowed family has no rough kernel");
    // K_V2 f = -V2(t, .) U1(t,s) f: the rough factor depends on the output
    // point only, so it leaves the phase-space sum.
    SpinorField out = apply(ParametrixOp::propagator, t, s, f);
    if (split_.rough_is_zero()) {
      std::fill(out.values.begin(), out.values.end(), Complex(0.0, 0.0));
      return out;
    }
    const PotentialSpec& base = split_.base;
    const double ct = base.modulation_value(t);
    const Matrix shape = base.shape_or_identity(n_);
    double x[kMaxGridDim];
    std::vector<Complex> tmp(static_cast<std::size_t>(n_));
    for (std::size_t j = 0; j < grid_.point_count(); ++j) {
      grid_.x_at(j, x);
      const double v2 = ct * (1.0 - split_.smooth_factor) * base.profile(x);
      for (int c = 0; c < n_; ++c) {
        Complex acc{0.0, 0.0};
        for (int b = 0; b < n_; ++b) acc += shape(c, b) * out.at(j, b);
        tmp[static_cast<std::size_t>(c)] = -v2 * acc;
      }
      for (int c = 0; c < n_; ++c) out.at(j, c) = tmp[static_cast<std::size_t>(c)];
    }
    return out;
  }

  const std::size_t count = grid_.point_count();
  const int n = n_;
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  SpinorField out(grid_, n);

  double flow_s[kMaxGridDim];
  for (std::size_t k = 0; k < count; ++k) {
    const double* shift = nullptr;
    if (flowed_) {
      const double as = split_.base.modulation_antiderivative(s);
      const double* xk = &xs_[k * static_cast<std::size_t>(grid_.dim())];
      for (int a = 0; a < grid_.dim(); ++a)
        flow_s[a] = as * split_.base.profile_gradient(xk, a);
      shift = flow_s;
    }
    gabor_.stft_row(f, window_, k, shift, row_.data());
    fill_phase_row(t, s, k, phase_row_.data());
    for (std::size_t m = 0; m < count; ++m)
      matvec(n, &phase_row_[m * nn], &row_[m * static_cast<std::size_t>(n)],
             &transformed_[m * static_cast<std::size_t>(n)]);
    // Inverse lattice transform per component: sum_m (.) e^(+i x_j.xi_m).
    for (int c = 0; c < n; ++c) {
      for (std::size_t m = 0; m < count; ++m)
        scratch_[m] = transformed_[m * static_cast<std::size_t>(n) + c] *
                      static_cast<double>(gabor_.transformer().parity(m));
      gabor_.transformer().raw_backward(scratch_.data());
      for (std::size_t j = 0; j < count; ++j)
        transformed_[j * static_cast<std::size_t>(n) + c] = scratch_[j];
    }
    // The k-th flow shift also carries the e^(-i x.F_s) coefficient twist.
    if (flowed_) {
      const double* xk = &xs_[k * static_cast<std::size_t>(grid_.dim())];
      double phase = 0.0;
      for (int a = 0; a < grid_.dim(); ++a) phase += xk[a] * flow_s[a];
      const Complex twist = std::polar(1.0, -phase);
      for (std::size_t e = 0; e < count * static_cast<std::size_t>(n); ++e)
        transformed_[e] *= twist;
    }
    accumulate(op, t, k, transformed_.data(), out);
  }
  return out;
}

SpinorField ParametrixEngine::apply_direct(ParametrixOp op, double t, double s,
                                           const SpinorField& f) const {
  if (!(f.grid == grid_)) throw std::invalid_argument("ParametrixEngine: grid mismatch");
  if (f.n != n_) throw std::invalid_argument("ParametrixEngine: spinor order mismatch");
  if (op == ParametrixOp::rough_kernel && flowed_)
    throw std::invalid_argument("ParametrixEngine: the flowed family has no rough kernel");

  const std::size_t count = grid_.point_count();
  const int n = n_;
  const int d = grid_.dim();
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  const PotentialSpec& base = split_.base;
  const double weight = grid_.cell_volume_x() * grid_.cell_volume_xi() *
                        std::pow(2.0 * M_PI, -d);
  const double ct = base.modulation_value(t);
  const Matrix shape = base.shape_or_identity(n);
  const double* pair = nullptr;
  if (op == ParametrixOp::smooth_kernel || op == ParametrixOp::kernel_sum)
    pair = smooth_pair_table().data();

  SpinorField out(grid_, n);
  std::vector<Complex> row(count * static_cast<std::size_t>(n));
  std::vector<Complex> phases(count * nn);
  std::vector<Complex> pv(static_cast<std::size_t>(n)), lv(static_cast<std::size_t>(n));
  Complex symbol_mat[64];
  double flow_s[kMaxGridDim] = {0, 0, 0, 0}, flow_t[kMaxGridDim] = {0, 0, 0, 0};

  for (std::size_t k = 0; k < count; ++k) {
    const double* xk = &xs_[k * static_cast<std::size_t>(d)];
    const double* shift = nullptr;
    if (flowed_) {
      const double as = base.modulation_antiderivative(s);
      const double at = base.modulation_antiderivative(t);
      for (int a = 0; a < d; ++a) {
        const double g = base.profile_gradient(xk, a);
        flow_s[a] = as * g;
        flow_t[a] = at * g;
      }
      shift = flow_s;
    }
    gabor_.stft_row(f, window_, k, shift, row.data());
    fill_phase_row(t, s, k, phases.data());

    Complex twist{1.0, 0.0};
    if (flowed_) {
      double phase = 0.0;
      for (int a = 0; a < d; ++a) phase += xk[a] * flow_s[a];
      twist = std::polar(1.0, -phase);
    }

    for (std::size_t m = 0; m < count; ++m) {
      matvec(n, &phases[m * nn], &row[m * static_cast<std::size_t>(n)], pv.data());
      for (int c = 0; c < n; ++c) pv[static_cast<std::size_t>(c)] *= twist;
      const double* xi = &xis_[m * static_cast<std::size_t>(d)];

      for (std::size_t j = 0; j < count; ++j) {
        const double* xj = &xs_[j * static_cast<std::size_t>(d)];
        double phase = 0.0;
        for (int a = 0; a < d; ++a) phase += xj[a] * xi[a];
        if (flowed_)
          for (int a = 0; a < d; ++a) phase -= (xj[a] - xk[a]) * flow_t[a];
        const Complex plane = std::polar(weight, phase);
        const std::size_t diff = grid_.wrapped_difference(j, k);
        const Complex gval = window_.samples()[diff];

        std::fill(lv.begin(), lv.end(), Complex(0.0, 0.0));
        if (op == ParametrixOp::propagator) {
          for (int c = 0; c < n; ++c) lv[static_cast<std::size_t>(c)] = gval * pv[static_cast<std::size_t>(c)];
        } else {
          if (op == ParametrixOp::symbol_kernel || op == ParametrixOp::kernel_sum) {
            for (int e = 0; e < n * n; ++e) symbol_mat[e] = Complex(0.0, 0.0);
            for (int a = 0; a < d; ++a) {
              const Complex dg = kI * window_.derivative(a)[diff];
              const Complex* al =
                  &alpha_flat_[(static_cast<std::size_t>(a + 1) * n) * static_cast<std::size_t>(n)];
              for (int e = 0; e < n * n; ++e) symbol_mat[e] += dg * al[e];
            }
            Complex tmp[8];
            matvec(n, symbol_mat, pv.data(), tmp);
            for (int c = 0; c < n; ++c) lv[static_cast<std::size_t>(c)] += tmp[c];
          }
          if (op == ParametrixOp::smooth_kernel || op == ParametrixOp::kernel_sum) {
            const double avg = pair[k * count + j];
            const Complex factor = -ct * split_.smooth_factor * avg * gval;
            for (int c = 0; c < n; ++c) {
              Complex acc{0.0, 0.0};
              for (int b = 0; b < n; ++b) acc += shape(c, b) * pv[static_cast<std::size_t>(b)];
              lv[static_cast<std::size_t>(c)] += factor * acc;
            }
          }
          if ((op == ParametrixOp::rough_kernel ||
               (op == ParametrixOp::kernel_sum && !flowed_)) &&
              !split_.rough_is_zero()) {
            const double v2 = ct * (1.0 - split_.smooth_factor) * base.profile(xj);
            const Complex factor = -v2 * gval;
            for (int c = 0; c < n; ++c) {
              Complex acc{0.0, 0.0};
              for (int b = 0; b < n; ++b) acc += shape(c, b) * pv[static_cast<std::size_t>(b)];
              lv[static_cast<std::size_t>(c)] += factor * acc;
            }
          }
        }
        for (int c = 0; c < n; ++c) out.at(j, c) += plane * lv[static_cast<std::size_t>(c)];
      }
    }
  }
  return out;
}

Matrix ParametrixEngine::remainder_rsigma(std::size_t x_index, std::size_t y_index) const {
  const std::size_t diff = grid_.wrapped_difference(y_index, x_index);
  Matrix r = Matrix::Zero(n_, n_);
  for (int a = 0; a < grid_.dim(); ++a)
    r += (-kI * window_.derivative(a)[diff]) * rep_.alpha(a + 1);
  return r;
}

Matrix ParametrixEngine::remainder_rsigma_quadrature(std::size_t x_index, std::size_t y_index,
                                                     const double* xi) const {
  const int d = grid_.dim();
  const std::size_t count = grid_.point_count();

  // ghat on the dual lattice under the forward convention.
  FourierTransformer fft(grid_);
  SpinorField g(grid_, 1);
  g.values = window_.samples();
  const SpinorField ghat = fft.forward(g);

  const double* xj = &xs_[y_index * static_cast<std::size_t>(d)];
  const double* xk = &xs_[x_index * static_cast<std::size_t>(d)];
  const Matrix sigma_xi = dirac_symbol(rep_, std::vector<double>(xi, xi + d)).matrix;

  Matrix acc = Matrix::Zero(n_, n_);
  std::vector<double> eta(static_cast<std::size_t>(d)), shifted(static_cast<std::size_t>(d));
  for (std::size_t m = 0; m < count; ++m) {
    grid_.xi_at(m, eta.data());
    double phase = 0.0;
    for (int a = 0; a < d; ++a) {
      phase += (xj[a] - xk[a]) * eta[static_cast<std::size_t>(a)];
      shifted[static_cast<std::size_t>(a)] = xi[a] + eta[static_cast<std::size_t>(a)];
    }
    const Complex w = std::polar(1.0, phase) * ghat.at(m, 0);
    acc += w * (dirac_symbol(rep_, shifted).matrix - sigma_xi);
  }
  return acc * grid_.cell_volume_xi();
}

double ParametrixEngine::phase_unitarity_defect(double t, double s, int samples) const {
  const std::size_t count = grid_.point_count();
  const std::size_t nn = static_cast<std::size_t>(n_) * n_;
  std::vector<Complex> phases(count * nn);
  double worst = 0.0;
  const std::size_t stride = std::max<std::size_t>(1, count / static_cast<std::size_t>(samples));
  Matrix p(n_, n_);
  for (std::size_t k = 0; k < count; k += stride) {
    fill_phase_row(t, s, k, phases.data());
    for (std::size_t m = 0; m < count; m += stride) {
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) p(i, j) = phases[m * nn + static_cast<std::size_t>(i) * n_ + j];
      worst = std::max(worst,
                       max_entry_norm(p * p.adjoint() - Matrix::Identity(n_, n_)));
    }
  }
  return worst;
}

ParametrixContext make_u1_context(const CliffordRep& rep, const PhaseSpaceGrid& grid,
                                  const Window& window, const PotentialSplit& split,
                                  double s, double t) {
  ParametrixContext ctx;
  ctx.engine = ParametrixEngine::flat(rep, grid, window, split);
  ctx.s = s;
  ctx.t = t;
  return ctx;
}

ParametrixContext make_u2_context(const CliffordRep& rep, const PhaseSpaceGrid& grid,
                                  const Window& window, const PotentialSpec& potential,
                                  double s, double t) {
  ParametrixContext ctx;
  ctx.engine = ParametrixEngine::flowed(rep, grid, window, potential);
  ctx.s = s;
  ctx.t = t;
  return ctx;
}

SpinorField apply_U1(const ParametrixContext& ctx, const SpinorField& f) {
  return ctx.engine->apply(ParametrixOp::propagator, ctx.t, ctx.s, f);
}
SpinorField apply_Ksigma(const ParametrixContext& ctx, const SpinorField& f) {
  return ctx.engine->apply(ParametrixOp::symbol_kernel, ctx.t, ctx.s, f);
}
SpinorField apply_KV1(const ParametrixContext& ctx, const SpinorField& f) {
  return ctx.engine->apply(ParametrixOp::smooth_kernel, ctx.t, ctx.s, f);
}
SpinorField apply_KV2(const ParametrixContext& ctx, const SpinorField& f) {
  return ctx.engine->apply(ParametrixOp::rough_kernel, ctx.t, ctx.s, f);
}
SpinorField apply_U2(const ParametrixContext& ctx, const SpinorField& f) {
  return ctx.engine->apply(ParametrixOp::propagator, ctx.t, ctx.s, f);
}
SpinorField apply_Ksigma_prime(const ParametrixContext& ctx, const SpinorField& f) {
  return ctx.engine->apply(ParametrixOp::symbol_kernel, ctx.t, ctx.s, f);
}
SpinorField apply_KV(const ParametrixContext& ctx, const SpinorField& f) {
  return ctx.engine->apply(ParametrixOp::smooth_kernel, ctx.t, ctx.s, f);
}
SpinorField apply_kernel_sum(const ParametrixContext& ctx, const SpinorField& f) {
  return ctx.engine->apply(ParametrixOp::kernel_sum, ctx.t, ctx.s, f);
}

}  // namespace wprop
