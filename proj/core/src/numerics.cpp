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

#include "wprop/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace wprop {

GaussLegendreRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on Legendre P_n, roots seeded by the Chebyshev guess.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = 0.5 * (b - a) * x + 0.5 * (a + b);
    rule.weights[i] = (b - a) / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double halton(std::uint64_t k, unsigned base) {
  double f = 1.0, r = 0.0;
  std::uint64_t i = k + 1;  // skip the all-zero first element
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

std::vector<double> halton_point(std::uint64_t k, int d, double half_width) {
  static const unsigned primes[16] = {2,  3,  5,  7,  11, 13, 17, 19,
                                      23, 29, 31, 37, 41, 43, 47, 53};
  if (d < 1 || d > 16) throw std::invalid_argument("halton_point: d out of range");
  std::vector<double> x(d);
  for (int a = 0; a < d; ++a) {
    x[a] = (2.0 * halton(k, primes[a]) - 1.0) * half_width;
  }
  return x;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace wprop
