// Shared helpers for the unit suites.
#ifndef WPROP_TESTS_TEST_UTIL_HPP
#define WPROP_TESTS_TEST_UTIL_HPP

#include <random>

#include "wprop/wprop.hpp"

namespace wprop_test {

using namespace wprop;

/// Deterministic pseudo-random box-concentrated field: a sum of a few
/// seeded Gaussian packets.
inline SpinorField random_field(const PhaseSpaceGrid& grid, int n, std::uint64_t seed,
                                int packets = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpinorField f(grid, n);
  double x[kMaxGridDim];
  for (int p = 0; p < packets; ++p) {
    double x0[kMaxGridDim], xi0[kMaxGridDim];
    for (int a = 0; a < grid.dim(); ++a) {
      x0[a] = uni(rng) * grid.box_half_width() / 3.0;
      xi0[a] = uni(rng) * 2.5;
    }
    std::vector<Complex> spin(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) spin[static_cast<std::size_t>(c)] = Complex(gauss(rng), gauss(rng));
    const double w = 0.7 + 0.5 * (uni(rng) + 1.0) * 0.5;
    for (std::size_t k = 0; k < grid.point_count(); ++k) {
      grid.x_at(k, x);
      double q = 0.0, ph = 0.0;
      for (int a = 0; a < grid.dim(); ++a) {
        q += (x[a] - x0[a]) * (x[a] - x0[a]);
        ph += x[a] * xi0[a];
      }
      const Complex env = std::polar(std::exp(-q / (2.0 * w * w)), ph);
      for (int c = 0; c < n; ++c) f.at(k, c) += env * spin[static_cast<std::size_t>(c)];
    }
  }
  const double norm = l2_norm(f);
  for (Complex& v : f.values) v /= norm;
  return f;
}

inline double max_abs_diff(const SpinorField& a, const SpinorField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace wprop_test

#endif  // WPROP_TESTS_TEST_UTIL_HPP
