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

#ifndef WPROP_NUMERICS_HPP
#define WPROP_NUMERICS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace wprop {

/// Nodes and weights of the n-point Gauss-Legendre rule on [a, b].
/// Exact for polynomials of degree <= 2n-1.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n, double a, double b);

/// k-th element (k >= 0) of the Halton sequence in the given base.
double halton(std::uint64_t k, unsigned base);

/// k-th point of the d-dimensional Halton sequence scaled to the box
/// [-half_width, half_width]^d. Bases are the first d primes; d <= 16.
std::vector<double> halton_point(std::uint64_t k, int d, double half_width);

/// FNV-1a 64-bit hash of a byte string; used for config fingerprints.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace wprop

#endif  // WPROP_NUMERICS_HPP
