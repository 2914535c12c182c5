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

#include "wprop/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "wprop/errors.hpp"
#include "wprop/fourier.hpp"

namespace wprop {

namespace {

const Complex kI{0.0, 1.0};

// Applies the multiplier m(xi) (an n x n matrix per bin) in frequency
// space using the unnormalized transform pair.
SpinorField apply_multiplier(const SpinorField& f,
                             const std::function<void(std::size_t, const double*, Matrix&)>& fill,
                             const CliffordRep& rep) {
  const PhaseSpaceGrid& gr = f.grid;
  const std::size_t count = gr.point_count();
  const int n = f.n;
  FourierTransformer fft(gr);

  // hat components
  std::vector<Complex> hat(count * static_cast<std::size_t>(n));
  std::vector<Complex> buf(count);
  for (int c = 0; c < n; ++c) {
    for (std::size_t k = 0; k < count; ++k) buf[k] = f.at(k, c);
    fft.raw_forward(buf.data());
    for (std::size_t k = 0; k < count; ++k)
      hat[k * static_cast<std::size_t>(n) + c] = buf[k];
  }

  double xi[kMaxGridDim];
  Matrix m(rep.n, rep.n);
  std::vector<Complex> mixed(count * static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < count; ++k) {
    gr.xi_at(k, xi);
    fill(k, xi, m);
    for (int c = 0; c < n; ++c) {
      Complex acc{0.0, 0.0};
      for (int b = 0; b < n; ++b) acc += m(c, b) * hat[k * static_cast<std::size_t>(n) + b];
      mixed[k * static_cast<std::size_t>(n) + c] = acc;
    }
  }

  SpinorField out(gr, n);
  const double inv = 1.0 / static_cast<double>(count);
  for (int c = 0; c < n; ++c) {
    for (std::size_t k = 0; k < count; ++k)
      buf[k] = mixed[k * static_cast<std::size_t>(n) + c];
    fft.raw_backward(buf.data());
    for (std::size_t k = 0; k < count; ++k) out.at(k, c) = buf[k] * inv;
  }
  return out;
}

}  // namespace

void TimeMesh::validate() const {
  if (segments < 1) throw std::invalid_argument("TimeMesh: need at least one segment");
  if (horizon == 0.0) throw std::invalid_argument("TimeMesh: zero horizon");
}

PicardState picard_solve(const SpinorField& u0, const TimeMesh& mesh,
                         const TimeOperator& kernel, double tol, int max_iter) {
  mesh.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("picard_solve: tol must be positive");
  const int nodes = mesh.node_count();
  const double dt = mesh.dt();
  const double u0_norm = l2_norm(u0);

  // Source terms K(t_j, 0) u0, fixed across iterations.
  std::vector<SpinorField> source;
  source.reserve(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) source.push_back(kernel(mesh.node(j), 0.0, u0));

  PicardState state;
  state.v = source;  // v0(t) = K(t,0) u0

  for (int iter = 1; iter <= max_iter; ++iter) {
    std::vector<SpinorField> next(state.v);
    for (int j = 0; j < nodes; ++j) {
      SpinorField rhs = source[static_cast<std::size_t>(j)];
      // i int_0^{t_j} K(t_j, s) v(s) ds, trapezoid over nodes 0..j.
      for (int l = 0; l <= j; ++l) {
        if (j == 0) break;
        const double w = (l == 0 || l == j) ? 0.5 * dt : dt;
        const SpinorField kv =
            kernel(mesh.node(j), mesh.node(l), state.v[static_cast<std::size_t>(l)]);
        axpy(kI * w, kv, rhs);
      }
      next[static_cast<std::size_t>(j)] = std::move(rhs);
    }

    double diff = 0.0;
    for (int j = 0; j < nodes; ++j) {
      double num = 0.0;
      const SpinorField& a = next[static_cast<std::size_t>(j)];
      const SpinorField& b = state.v[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < a.values.size(); ++i)
        num += std::norm(a.values[i] - b.values[i]);
      diff = std::max(diff, std::sqrt(num * a.grid.cell_volume_x()) /
                                (u0_norm > 0.0 ? u0_norm : 1.0));
    }
    state.v = std::move(next);
    state.iterations = iter;
    state.residual_history.push_back(diff);

    if (diff <= tol) return state;
    // Stagnation at roundoff scale: the requested tol sits below the floor.
    const std::size_t h = state.residual_history.size();
    if (h >= 3 && diff < 1e-12 &&
        diff > 0.5 * state.residual_history[h - 2] &&
        state.residual_history[h - 2] > 0.5 * state.residual_history[h - 3]) {
      state.floor_reached = true;
      return state;
    }
  }
  throw ConvergenceError("picard_solve: no convergence within max_iter",
                         state.residual_history);
}

std::vector<SpinorField> assemble_solution(const SpinorField& u0, const TimeMesh& mesh,
                                           const PicardState& state,
                                           const TimeOperator& propagator) {
  mesh.validate();
  const int nodes = mesh.node_count();
  if (static_cast<int>(state.v.size()) != nodes)
    throw std::invalid_argument("assemble_solution: state/mesh node mismatch");
  const double dt = mesh.dt();

  std::vector<SpinorField> u;
  u.reserve(static_cast<std::size_t>(nodes));
  u.push_back(u0);  // empty Duhamel integral and U(0,0) = Id
  for (int j = 1; j < nodes; ++j) {
    SpinorField uj = propagator(mesh.node(j), 0.0, u0);
    for (int l = 0; l <= j; ++l) {
      const double w = (l == 0 || l == j) ? 0.5 * dt : dt;
      const SpinorField us =
          propagator(mesh.node(j), mesh.node(l), state.v[static_cast<std::size_t>(l)]);
      axpy(kI * w, us, uj);
    }
    u.push_back(std::move(uj));
  }
  return u;
}

SolveResult solve_cauchy(const std::shared_ptr<const ParametrixEngine>& engine,
                         const SpinorField& u0, const TimeMesh& mesh, double tol,
                         int max_iter) {
  const TimeOperator kernel = [&engine](double t, double s, const SpinorField& f) {
    return engine->apply(ParametrixOp::kernel_sum, t, s, f);
  };
  const TimeOperator prop = [&engine](double t, double s, const SpinorField& f) {
    return engine->apply(ParametrixOp::propagator, t, s, f);
  };
  SolveResult result;
  result.picard = picard_solve(u0, mesh, kernel, tol, max_iter);
  result.u = assemble_solution(u0, mesh, result.picard, prop);
  return result;
}

std::vector<SpinorField> reference_split_step(const SpinorField& u0, const PotentialSpec& v,
                                              const TimeMesh& mesh, const CliffordRep& rep) {
  mesh.validate();
  v.validate();
  require_box_concentrated(u0, "reference_split_step");
  const PhaseSpaceGrid& gr = u0.grid;
  const std::size_t count = gr.point_count();
  const int n = u0.n;
  const double dt = mesh.dt();
  FourierTransformer fft(gr);

  // Kinetic factor exp(-i dt sigma(xi)) per bin.
  std::vector<Complex> kin(count * static_cast<std::size_t>(n * n));
  {
    double xi[kMaxGridDim];
    std::vector<double> xiv(static_cast<std::size_t>(gr.dim()));
    for (std::size_t m = 0; m < count; ++m) {
      gr.xi_at(m, xi);
      xiv.assign(xi, xi + gr.dim());
      const Matrix e = half_propagator(rep, dt, xiv);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          kin[m * static_cast<std::size_t>(n * n) + static_cast<std::size_t>(i) * n + j] =
              e(i, j);
    }
  }

  const bool scalar = v.scalar_shape();
  Matrix shape = v.shape_or_identity(n);
  Eigen::SelfAdjointEigenSolver<Matrix> shape_es;
  if (!scalar) shape_es.compute(shape);

  // Half potential step at time t: multiply by exp(-i (dt/2) c(t) phi(x) S).
  auto half_potential = [&](SpinorField& u, double t) {
    double x[kMaxGridDim];
    for (std::size_t k = 0; k < count; ++k) {
      gr.x_at(k, x);
      const double val = 0.5 * dt * v.modulation_value(t) * v.profile(x);
      if (scalar) {
        const Complex phase = std::polar(1.0, -val);
        for (int c = 0; c < n; ++c) u.at(k, c) *= phase;
      } else {
        // exp(-i val S) through the spectral decomposition of S.
        Eigen::VectorXcd coeff(n);
        for (int c = 0; c < n; ++c) coeff(c) = u.at(k, c);
        Eigen::VectorXcd w = shape_es.eigenvectors().adjoint() * coeff;
        for (int c = 0; c < n; ++c)
          w(c) *= std::polar(1.0, -val * shape_es.eigenvalues()(c));
        coeff = shape_es.eigenvectors() * w;
        for (int c = 0; c < n; ++c) u.at(k, c) = coeff(c);
      }
    }
  };

  std::vector<Complex> buf(count);
  std::vector<Complex> hat(count * static_cast<std::size_t>(n));
  auto kinetic_step = [&](SpinorField& u) {
    const double inv = 1.0 / static_cast<double>(count);
    for (int c = 0; c < n; ++c) {
      for (std::size_t k = 0; k < count; ++k) buf[k] = u.at(k, c);
      fft.raw_forward(buf.data());
      for (std::size_t k = 0; k < count; ++k)
        hat[k * static_cast<std::size_t>(n) + c] = buf[k];
    }
    for (std::size_t m = 0; m < count; ++m) {
      const Complex* e = &kin[m * static_cast<std::size_t>(n * n)];
      Complex tmp[8];
      for (int i = 0; i < n; ++i) {
        Complex acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) acc += e[i * n + j] * hat[m * static_cast<std::size_t>(n) + j];
        tmp[i] = acc;
      }
      for (int i = 0; i < n; ++i) hat[m * static_cast<std::size_t>(n) + i] = tmp[i];
    }
    for (int c = 0; c < n; ++c) {
      for (std::size_t k = 0; k < count; ++k)
        buf[k] = hat[k * static_cast<std::size_t>(n) + c];
      fft.raw_backward(buf.data());
      for (std::size_t k = 0; k < count; ++k) u.at(k, c) = buf[k] * inv;
    }
  };

  std::vector<SpinorField> traj;
  traj.reserve(static_cast<std::size_t>(mesh.node_count()));
  traj.push_back(u0);
  SpinorField u = u0;
  for (int j = 0; j < mesh.segments; ++j) {
    half_potential(u, mesh.node(j));
    kinetic_step(u);
    half_potential(u, mesh.node(j + 1));
    traj.push_back(u);
  }
  return traj;
}

double residual_check(const std::vector<SpinorField>& trajectory, const PotentialSpec& v,
                      const TimeMesh& mesh, const CliffordRep& rep) {
  mesh.validate();
  if (static_cast<int>(trajectory.size()) != mesh.node_count())
    throw std::invalid_argument("residual_check: trajectory/mesh node mismatch");
  const double dt = mesh.dt();
  double worst = 0.0;
  for (int j = 1; j + 1 < mesh.node_count(); ++j) {
    const SpinorField& u = trajectory[static_cast<std::size_t>(j)];
    const SpinorField sig = apply_dirac_operator(rep, u);
    SpinorField res = sig;

    // + V(t_j, x) u
    const PhaseSpaceGrid& gr = u.grid;
    double x[kMaxGridDim];
    const double ct = v.modulation_value(mesh.node(j));
    const bool scalar = v.scalar_shape();
    const Matrix shape = v.shape_or_identity(u.n);
    for (std::size_t k = 0; k < gr.point_count(); ++k) {
      gr.x_at(k, x);
      const double val = ct * v.profile(x);
      if (scalar) {
        for (int c = 0; c < u.n; ++c) res.at(k, c) += val * u.at(k, c);
      } else {
        for (int c = 0; c < u.n; ++c) {
          Complex acc{0.0, 0.0};
          for (int b = 0; b < u.n; ++b) acc += shape(c, b) * u.at(k, b);
          res.at(k, c) += val * acc;
        }
      }
    }

    // - i d_t u by the centered difference
    const SpinorField& up = trajectory[static_cast<std::size_t>(j + 1)];
    const SpinorField& um = trajectory[static_cast<std::size_t>(j - 1)];
    for (std::size_t i = 0; i < res.values.size(); ++i)
      res.values[i] -= kI * (up.values[i] - um.values[i]) / (2.0 * dt);

    const double un = l2_norm(u);
    worst = std::max(worst, un > 0.0 ? l2_norm(res) / un : 0.0);
  }
  return worst;
}

SpinorField free_propagate(const CliffordRep& rep, const SpinorField& u0, double t) {
  return apply_multiplier(
      u0,
      [&rep, t](std::size_t, const double* xi, Matrix& m) {
        std::vector<double> x(xi, xi + rep.d);
        m = half_propagator(rep, t, x);
      },
      rep);
}

SpinorField apply_dirac_operator(const CliffordRep& rep, const SpinorField& f) {
  return apply_multiplier(
      f,
      [&rep](std::size_t, const double* xi, Matrix& m) {
        m = dirac_symbol(rep, std::vector<double>(xi, xi + rep.d)).matrix;
      },
      rep);
}

}  // namespace wprop
