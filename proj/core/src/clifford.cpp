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

#include "wprop/clifford.hpp"

#include <cmath>
#include <stdexcept>

#include "wprop/errors.hpp"
#include "wprop/grid.hpp"
#include "wprop/numerics.hpp"

namespace wprop {

namespace {

const Complex kI{0.0, 1.0};

Matrix pauli(int which) {
  Matrix m(2, 2);
  switch (which) {
    case 1:  // a_1
      m << 0, 1, 1, 0;
      break;
    case 2:  // a_2
      m << 1, 0, 0, -1;
      break;
    default:  // a_3
      m << 0, -kI, kI, 0;
      break;
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Doubling step: from 2k+1 anticommuting involutions of order n to 2k+3 of
// order 2n, via a1 (x) beta_i together with a3 (x) I and a2 (x) I.
std::vector<Matrix> double_family(const std::vector<Matrix>& family) {
  const Eigen::Index n = family.front().rows();
  const Matrix id = Matrix::Identity(n, n);
  std::vector<Matrix> out;
  out.reserve(family.size() + 2);
  for (const Matrix& beta : family) out.push_back(kron(pauli(1), beta));
  out.push_back(kron(pauli(3), id));
  out.push_back(kron(pauli(2), id));
  return out;
}

}  // namespace

double max_entry_norm(const Matrix& m) {
  return m.cwiseAbs().maxCoeff();
}

CliffordRep build_clifford(int d, CliffordVariant variant) {
  if (d < 1) throw std::invalid_argument("build_clifford: d must be >= 1");
  if (d > 12)
    throw CapacityError("build_clifford: d > 12 exceeds the supported matrix order");

  CliffordRep rep;
  rep.d = d;

  if (variant == CliffordVariant::dirac) {
    if (d != 3)
      throw std::invalid_argument("build_clifford: the dirac variant requires d = 3");
    const Matrix id2 = Matrix::Identity(2, 2);
    rep.n = 4;
    rep.alphas.push_back(kron(pauli(2), id2));  // diag(I2, -I2)
    for (int j = 1; j <= 3; ++j) rep.alphas.push_back(kron(pauli(1), pauli(j)));
    return rep;
  }

  // Seed family: the three Pauli matrices pairwise anticommute.
  std::vector<Matrix> family = {pauli(1), pauli(2), pauli(3)};
  while (static_cast<int>(family.size()) < d + 1) family = double_family(family);

  // alpha_0 takes the last needed member so that low dimensions reproduce
  // the usual small representations (d=1: a2, a1; d=2: a3, a1, a2).
  rep.alphas.push_back(family[static_cast<std::size_t>(d)]);
  for (int j = 0; j < d; ++j) rep.alphas.push_back(family[static_cast<std::size_t>(j)]);
  rep.n = static_cast<int>(rep.alphas.front().rows());
  return rep;
}

double anticommutation_defect(const CliffordRep& rep) {
  const Matrix id = Matrix::Identity(rep.n, rep.n);
  double worst = 0.0;
  for (int j = 0; j <= rep.d; ++j) {
    worst = std::max(worst, max_entry_norm(rep.alpha(j) - rep.alpha(j).adjoint()));
    for (int k = 0; k <= rep.d; ++k) {
      const Matrix anti = rep.alpha(j) * rep.alpha(k) + rep.alpha(k) * rep.alpha(j);
      const Matrix target = (j == k) ? Matrix(2.0 * id) : Matrix(Matrix::Zero(rep.n, rep.n));
      worst = std::max(worst, max_entry_norm(anti - target));
    }
  }
  return worst;
}

DiracSymbolValue dirac_symbol(const CliffordRep& rep, const std::vector<double>& xi) {
  if (static_cast<int>(xi.size()) != rep.d)
    throw std::invalid_argument("dirac_symbol: xi dimension mismatch");
  DiracSymbolValue v;
  v.xi = xi;
  v.matrix = rep.alpha(0);
  for (int j = 0; j < rep.d; ++j) v.matrix += xi[static_cast<std::size_t>(j)] * rep.alpha(j + 1);
  return v;
}

Matrix half_propagator(const CliffordRep& rep, double t, const std::vector<double>& xi) {
  double s = 0.0;
  for (double c : xi) s += c * c;
  const double bracket = std::sqrt(1.0 + s);
  const Matrix sigma = dirac_symbol(rep, xi).matrix;
  const Matrix id = Matrix::Identity(rep.n, rep.n);
  return std::cos(t * bracket) * id - kI * (std::sin(t * bracket) / bracket) * sigma;
}

SymbolGrowthReport symbol_growth_check(const CliffordRep& rep, int sample_count,
                                       int max_order, double box_half_width) {
  if (sample_count < 1) throw std::invalid_argument("symbol_growth_check: sample_count");
  if (max_order < 0 || max_order > 2)
    throw std::invalid_argument("symbol_growth_check: max_order must be 0, 1 or 2");

  SymbolGrowthReport report;
  report.sample_count = sample_count;
  report.box_half_width = box_half_width;
  report.sup_ratio.assign(static_cast<std::size_t>(max_order) + 1, 0.0);

  const double step = 0.5;  // central differences; exact through degree 2
  auto diff = [&](const std::vector<double>& xi, const std::vector<double>& eta) {
    std::vector<double> shifted(xi);
    for (int a = 0; a < rep.d; ++a) shifted[static_cast<std::size_t>(a)] += eta[static_cast<std::size_t>(a)];
    return Matrix(dirac_symbol(rep, shifted).matrix - dirac_symbol(rep, xi).matrix);
  };

  for (int k = 0; k < sample_count; ++k) {
    const std::vector<double> xi = halton_point(static_cast<std::uint64_t>(2 * k), rep.d, box_half_width);
    const std::vector<double> eta = halton_point(static_cast<std::uint64_t>(2 * k + 1), rep.d, box_half_width);
    const double weight = peetre_weight(eta, 1.0);

    report.sup_ratio[0] = std::max(report.sup_ratio[0], max_entry_norm(diff(xi, eta)) / weight);

    for (int a = 0; a < rep.d && max_order >= 1; ++a) {
      std::vector<double> ep(eta), em(eta);
      ep[static_cast<std::size_t>(a)] += step;
      em[static_cast<std::size_t>(a)] -= step;
      const Matrix d1 = (diff(xi, ep) - diff(xi, em)) / (2.0 * step);
      report.sup_ratio[1] = std::max(report.sup_ratio[1], max_entry_norm(d1) / weight);
      if (max_order >= 2) {
        const Matrix d2 = (diff(xi, ep) - 2.0 * diff(xi, eta) + diff(xi, em)) / (step * step);
        report.sup_ratio[2] = std::max(report.sup_ratio[2], max_entry_norm(d2) / weight);
      }
    }
  }
  return report;
}

}  // namespace wprop
