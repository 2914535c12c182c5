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

#ifndef WPROP_SOLVER_HPP
#define WPROP_SOLVER_HPP

#include <functional>
#include <vector>

#include "wprop/clifford.hpp"
#include "wprop/grid.hpp"
#include "wprop/parametrix.hpp"
#include "wprop/potentials.hpp"

namespace wprop {

/// Uniform nodes t_j = j horizon / segments. A negative horizon walks the
/// mirrored mesh into negative times; all quadratures are orientation aware.
struct TimeMesh {
  double horizon = 0.5;
  int segments = 8;

  int node_count() const { return segments + 1; }
  double dt() const { return horizon / segments; }
  double node(int j) const { return horizon * j / segments; }
  void validate() const;
};

/// A two-parameter operator family (t, s) |-> Op(t,s), applied to a field.
using TimeOperator = std::function<SpinorField(double, double, const SpinorField&)>;

/// Fixed-point state of the auxiliary Volterra density
///   v(t) = K(t,0) u0 + i int_0^t K(t,s) v(s) ds
/// discretized by the trapezoid rule on the mesh nodes.
struct PicardState {
  int iterations = 0;
  std::vector<SpinorField> v;             ///< one field per mesh node
  std::vector<double> residual_history;   ///< sup-node relative residuals
  bool floor_reached = false;             ///< stagnated above tol at roundoff scale
};

/// Picard iteration on the trapezoid-discretized Volterra equation, seeded
/// with v0(t) = K(t,0) u0 (the first Neumann term). Residuals are measured
/// in relative discrete L^2, sup over nodes. Throws ConvergenceError when
/// max_iter is exhausted while the residual is still falling; stagnation at
/// roundoff scale above tol sets floor_reached instead.
PicardState picard_solve(const SpinorField& u0, const TimeMesh& mesh,
                         const TimeOperator& kernel, double tol = 1e-8, int max_iter = 12);

/// Duhamel assembly U(t_j) u0 = U(t_j,0) u0 + i int_0^{t_j} U(t_j,s) v(s) ds
/// by the same trapezoid rule. Node 0 is u0 itself.
std::vector<SpinorField> assemble_solution(const SpinorField& u0, const TimeMesh& mesh,
                                           const PicardState& state,
                                           const TimeOperator& propagator);

struct SolveResult {
  std::vector<SpinorField> u;
  PicardState picard;
};

/// Full pipeline: Picard on the engine's kernel sum, then assembly with its
/// propagator.
SolveResult solve_cauchy(const std::shared_ptr<const ParametrixEngine>& engine,
                         const SpinorField& u0, const TimeMesh& mesh, double tol = 1e-8,
                         int max_iter = 12);

/// Strang splitting reference solver: half potential step, closed-form
/// kinetic step exp(-i dt sigma(D)), half potential step. Every factor is
/// unitary, so the discrete L^2 norm is conserved to roundoff.
std::vector<SpinorField> reference_split_step(const SpinorField& u0, const PotentialSpec& v,
                                              const TimeMesh& mesh, const CliffordRep& rep);

/// Max over interior nodes of
///   || i (u_{j+1} - u_{j-1}) / (2 dt) - sigma(D) u_j - V(t_j) u_j ||_2
/// relative to ||u_j||_2.
double residual_check(const std::vector<SpinorField>& trajectory, const PotentialSpec& v,
                      const TimeMesh& mesh, const CliffordRep& rep);

/// Exact free evolution exp(-i t sigma(D)) u0 through the closed-form
/// multiplier on the frequency lattice.
SpinorField free_propagate(const CliffordRep& rep, const SpinorField& u0, double t);

/// sigma(D) f = F^{-1} sigma(xi) F f.
SpinorField apply_dirac_operator(const CliffordRep& rep, const SpinorField& f);

}  // namespace wprop

#endif  // WPROP_SOLVER_HPP
