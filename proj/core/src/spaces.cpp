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

#include "wprop/spaces.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wprop/errors.hpp"
#include "wprop/numerics.hpp"

namespace wprop {

namespace {

bool is_inf(double p) { return std::isinf(p); }

// One-exponent reducer: max for p = inf, else (sum a^p * cellvol)^(1/p).
struct Reducer {
  double p = 2.0;
  double cellvol = 1.0;
  double acc = 0.0;

  void add(double a) {
    if (is_inf(p)) {
      acc = std::max(acc, a);
    } else if (p == 1.0) {
      acc += a;
    } else if (p == 2.0) {
      acc += a * a;
    } else {
      acc += std::pow(a, p);
    }
  }
  double finish() const {
    if (is_inf(p)) return acc;
    if (p == 1.0) return acc * cellvol;
    if (p == 2.0) return std::sqrt(acc * cellvol);
    return std::pow(acc * cellvol, 1.0 / p);
  }
};

std::string exp_str(double p) {
  if (is_inf(p)) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace

void NormSpec::validate() const {
  if (!(p >= 1.0) || !(q >= 1.0))
    throw std::invalid_argument("NormSpec: exponents must lie in [1, inf]");
  if (!std::isfinite(r) || !std::isfinite(rho))
    throw std::invalid_argument("NormSpec: weights must be finite");
}

std::string NormSpec::label() const {
  std::ostringstream os;
  os << (flavor == NormFlavor::modulation ? "modulation" : "wiener") << ',' << exp_str(p)
     << ',' << exp_str(q) << ',' << r << ',' << rho;
  return os.str();
}

std::vector<double> phase_space_norms(const GaborTransform& gt, const SpinorField& f,
                                      const Window& g, const std::vector<NormSpec>& specs) {
  if (!f.is_finite())
    throw std::invalid_argument("phase_space_norms: non-finite field values");
  for (const NormSpec& s : specs) s.validate();

  const PhaseSpaceGrid& gr = gt.grid();
  const std::size_t count = gr.point_count();
  const int n = f.n;
  const double hvol = gr.cell_volume_x();
  const double xivol = gr.cell_volume_xi();
  const std::size_t nspec = specs.size();

  // Per-spec <xi>^rho tables and accumulators.
  std::vector<std::vector<double>> xi_weight(nspec);
  std::vector<double> bracket_xi(count);
  {
    double xi[kMaxGridDim];
    for (std::size_t m = 0; m < count; ++m) {
      gr.xi_at(m, xi);
      bracket_xi[m] = peetre_weight(xi, gr.dim(), 1.0);
    }
  }
  for (std::size_t s = 0; s < nspec; ++s) {
    xi_weight[s].resize(count);
    for (std::size_t m = 0; m < count; ++m)
      xi_weight[s][m] = std::pow(bracket_xi[m], specs[s].rho);
  }

  // flat: single reduction when p == q; wiener: outer reducer over x;
  // modulation: per-xi partial reductions, finished after the row sweep.
  enum class Mode { flat, wiener, modulation };
  std::vector<Mode> mode(nspec);
  std::vector<Reducer> outer(nspec);
  std::vector<std::vector<Reducer>> per_xi(nspec);
  for (std::size_t s = 0; s < nspec; ++s) {
    if (specs[s].p == specs[s].q) {
      mode[s] = Mode::flat;
      outer[s] = Reducer{specs[s].p, hvol * xivol, 0.0};
    } else if (specs[s].flavor == NormFlavor::wiener) {
      mode[s] = Mode::wiener;
      outer[s] = Reducer{specs[s].p, hvol, 0.0};
    } else {
      mode[s] = Mode::modulation;
      per_xi[s].assign(count, Reducer{specs[s].p, hvol, 0.0});
    }
  }

  std::vector<Complex> row(count * static_cast<std::size_t>(n));
  std::vector<double> mag(count);
  double x[kMaxGridDim];
  for (std::size_t k = 0; k < count; ++k) {
    gt.stft_row(f, g, k, nullptr, row.data());
    for (std::size_t m = 0; m < count; ++m) {
      double a = 0.0;
      for (int c = 0; c < n; ++c)
        a = std::max(a, std::abs(row[m * static_cast<std::size_t>(n) + c]));
      mag[m] = a;
    }
    gr.x_at(k, x);
    const double bracket_x = peetre_weight(x, gr.dim(), 1.0);

    for (std::size_t s = 0; s < nspec; ++s) {
      const double xw = std::pow(bracket_x, specs[s].r);
      const std::vector<double>& xiw = xi_weight[s];
      switch (mode[s]) {
        case Mode::flat: {
          for (std::size_t m = 0; m < count; ++m) outer[s].add(xw * xiw[m] * mag[m]);
          break;
        }
        case Mode::wiener: {
          Reducer inner{specs[s].q, xivol, 0.0};
          for (std::size_t m = 0; m < count; ++m) inner.add(xw * xiw[m] * mag[m]);
          outer[s].add(inner.finish());
          break;
        }
        case Mode::modulation: {
          for (std::size_t m = 0; m < count; ++m) per_xi[s][m].add(xw * xiw[m] * mag[m]);
          break;
        }
      }
    }
  }

  std::vector<double> result(nspec);
  for (std::size_t s = 0; s < nspec; ++s) {
    if (mode[s] == Mode::modulation) {
      Reducer out{specs[s].q, xivol, 0.0};
      for (std::size_t m = 0; m < count; ++m) out.add(per_xi[s][m].finish());
      result[s] = out.finish();
    } else {
      result[s] = outer[s].finish();
    }
  }
  return result;
}

double phase_space_norm(const GaborTransform& gt, const SpinorField& f, const Window& g,
                        const NormSpec& spec) {
  return phase_space_norms(gt, f, g, {spec}).front();
}

double modulation_norm(const GaborTransform& gt, const SpinorField& f, const Window& g,
                       const NormSpec& spec) {
  if (spec.flavor != NormFlavor::modulation)
    throw std::invalid_argument("modulation_norm: spec flavor mismatch");
  return phase_space_norm(gt, f, g, spec);
}

double wiener_norm(const GaborTransform& gt, const SpinorField& f, const Window& g,
                   const NormSpec& spec) {
  if (spec.flavor != NormFlavor::wiener)
    throw std::invalid_argument("wiener_norm: spec flavor mismatch");
  return phase_space_norm(gt, f, g, spec);
}

SpinorField dilate(const FourierTransformer& fft, const SpinorField& f, double theta) {
  if (!(theta > 0.0) || theta > 1.0)
    throw std::invalid_argument("dilate: theta must lie in (0, 1]");
  if (theta == 1.0) return f;
  const PhaseSpaceGrid& gr = f.grid;
  const std::size_t count = gr.point_count();
  const SpinorField fhat = fft.forward(f);
  const double xivol = gr.cell_volume_xi();

  SpinorField out(gr, f.n);
  std::vector<double> xs(count * static_cast<std::size_t>(gr.dim()));
  std::vector<double> xis(count * static_cast<std::size_t>(gr.dim()));
  for (std::size_t k = 0; k < count; ++k) gr.x_at(k, &xs[k * gr.dim()]);
  for (std::size_t m = 0; m < count; ++m) gr.xi_at(m, &xis[m * gr.dim()]);

  for (std::size_t k = 0; k < count; ++k) {
    const double* x = &xs[k * gr.dim()];
    for (std::size_t m = 0; m < count; ++m) {
      const double* xi = &xis[m * gr.dim()];
      double phase = 0.0;
      for (int a = 0; a < gr.dim(); ++a) phase += theta * x[a] * xi[a];
      const Complex e = std::polar(xivol, phase);
      for (int c = 0; c < f.n; ++c) out.at(k, c) += e * fhat.at(m, c);
    }
  }
  return out;
}

DilationReport dilation_bound_check(const GaborTransform& gt, const SpinorField& f,
                                    const Window& g, const std::vector<double>& thetas) {
  const NormSpec minf1{NormFlavor::modulation, kInfExponent, 1.0, 0.0, 0.0};
  const double base = phase_space_norm(gt, f, g, minf1);
  if (base == 0.0) throw std::invalid_argument("dilation_bound_check: zero field");

  DilationReport report;
  report.thetas = thetas;
  for (double theta : thetas) {
    const SpinorField dil = dilate(gt.transformer(), f, theta);
    const double ratio = phase_space_norm(gt, dil, g, minf1) / base;
    report.ratios.push_back(ratio);
    report.sup_ratio = std::max(report.sup_ratio, ratio);
  }
  return report;
}

double taylor_average(const std::function<double(const double*)>& f, const double* x,
                      const double* y, int d, int weight_power) {
  if (weight_power != 0 && weight_power != 1)
    throw std::invalid_argument("taylor_average: weight power must be 0 or 1");
  static const GaussLegendreRule rule = gauss_legendre(8, 0.0, 1.0);
  double point[kMaxGridDim];
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double theta = rule.nodes[i];
    for (int a = 0; a < d; ++a) point[a] = x[a] + theta * (y[a] - x[a]);
    const double w = weight_power == 1 ? (1.0 - theta) : 1.0;
    acc += rule.weights[i] * w * f(point);
  }
  return acc;
}

}  // namespace wprop
