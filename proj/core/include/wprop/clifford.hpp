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

#ifndef WPROP_CLIFFORD_HPP
#define WPROP_CLIFFORD_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace wprop {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Max modulus over entries; the matrix counterpart of the max-component
/// vector modulus used throughout.
double max_entry_norm(const Matrix& m);

/// A family of d+1 Hermitian matrices alpha_0..alpha_d of order n with
/// alpha_j alpha_k + alpha_k alpha_j = 2 delta_{jk} I_n.
struct CliffordRep {
  int d = 0;                   ///< spatial dimension
  int n = 0;                   ///< matrix order (a power of two)
  std::vector<Matrix> alphas;  ///< alpha_0, ..., alpha_d

  const Matrix& alpha(int j) const { return alphas.at(static_cast<std::size_t>(j)); }
};

enum class CliffordVariant {
  generic,  ///< tensor-product doubling from the 2x2 seeds
  dirac,    ///< the standard 4x4 representation, d = 3 only
};

/// Builds an anticommuting Hermitian family for spatial dimension d.
/// The order n is whatever the doubling recursion yields; validity is the
/// anticommutation relation itself, not a dimension formula.
/// Throws CapacityError for d > 12.
CliffordRep build_clifford(int d, CliffordVariant variant = CliffordVariant::generic);

/// Largest violation of alpha_j alpha_k + alpha_k alpha_j = 2 delta_{jk} I_n
/// and of Hermiticity across the family, in max-entry norm.
double anticommutation_defect(const CliffordRep& rep);

/// The symbol sigma(xi) = alpha_0 + sum_j xi_j alpha_j evaluated at one
/// frequency. Hermitian with eigenvalues +-<xi>, each of multiplicity n/2,
/// and sigma(xi)^2 = (1+|xi|^2) I_n.
struct DiracSymbolValue {
  Matrix matrix;
  std::vector<double> xi;
};

DiracSymbolValue dirac_symbol(const CliffordRep& rep, const std::vector<double>& xi);

/// exp(-i t sigma(xi)) in closed form:
///   cos(t<xi>) I - i sin(t<xi>) sigma(xi)/<xi>.
Matrix half_propagator(const CliffordRep& rep, double t, const std::vector<double>& xi);

/// Per-derivative-order suprema of
///   |d^a_eta (sigma(xi+eta) - sigma(xi))| / <eta>
/// over deterministic Halton samples of (xi, eta) in a box. Derivatives are
/// central differences with step 0.5, exact for this linear symbol.
struct SymbolGrowthReport {
  std::vector<double> sup_ratio;  ///< indexed by derivative order 0..max_order
  int sample_count = 0;
  double box_half_width = 0.0;
};

SymbolGrowthReport symbol_growth_check(const CliffordRep& rep, int sample_count,
                                       int max_order, double box_half_width = 8.0);

}  // namespace wprop

#endif  // WPROP_CLIFFORD_HPP
