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

#include "wprop/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <tuple>

#include "wprop/errors.hpp"
#include "wprop/fields.hpp"
#include "wprop/parametrix.hpp"
#include "wprop/solver.hpp"

namespace wprop {

namespace {

// Deterministic parallel map: results are keyed by index, workers pull
// indices from a shared counter.
void parallel_for_indexed(int count, const std::function<void(int, int)>& body) {
  const int workers = std::max(1, std::min<int>(static_cast<int>(std::thread::hardware_concurrency()),
                                                std::min(count, 8)));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) body(i, 0);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) break;
        try {
          body(i, w);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct FieldRows {
  std::vector<NormReportRow> rows;
};

NormReport run_experiment(const ExperimentConfig& cfg, bool flowed, const char* name) {
  const PhaseSpaceGrid grid = cfg.make_grid();
  const CliffordRep rep = cfg.make_rep();
  const PotentialSpec potential = cfg.make_potential();

  if (!flowed && !theorem1_admissible(potential))
    throw HypothesisError(
        "theorem1: potential is outside the first-derivative class "
        "(stark, bounded-rough, or scalar time-modulated)");
  if (flowed) {
    if (!theorem2_admissible(potential))
      throw HypothesisError("theorem2: potential must be scalar with bounded second derivatives");
    for (const NormSpec& s : cfg.norms)
      if (s.rho != 0.0)
        throw HypothesisError(
            "theorem2: the statement covers W_{r,0}; configure rho = 0");
  }

  PotentialSplit split;
  if (!flowed) split = decompose(potential, 1, cfg.split_delta);

  const std::vector<SpinorField> family =
      standard_field_family(grid, rep.n, cfg.seed, cfg.field_count, cfg.bandlimit);
  const int nfields = static_cast<int>(family.size());

  std::vector<FieldRows> per_field(static_cast<std::size_t>(nfields));

  parallel_for_indexed(nfields, [&](int i, int) {
    // Worker-local machinery: engines and transforms hold FFT plans.
    GaborTransform gt(grid);
    const Window window = Window::gaussian(grid, cfg.window_width);
    std::shared_ptr<ParametrixEngine> engine =
        flowed ? ParametrixEngine::flowed(rep, grid, window, potential)
               : ParametrixEngine::flat(rep, grid, window, split);

    const SpinorField& u0 = family[static_cast<std::size_t>(i)];
    const std::vector<double> base_norms = phase_space_norms(gt, u0, window, cfg.norms);

    auto& rows = per_field[static_cast<std::size_t>(i)].rows;
    for (int sign = 0; sign < 2; ++sign) {
      TimeMesh mesh{(sign == 0 ? 1.0 : -1.0) * cfg.horizon, cfg.segments};
      const SolveResult sol =
          solve_cauchy(engine, u0, mesh, cfg.picard_tol, cfg.picard_max_iter);
      for (int j = (sign == 0 ? 0 : 1); j < mesh.node_count(); ++j) {
        const std::vector<double> node_norms =
            phase_space_norms(gt, sol.u[static_cast<std::size_t>(j)], window, cfg.norms);
        for (std::size_t s = 0; s < cfg.norms.size(); ++s) {
          NormReportRow row;
          row.t = mesh.node(j);
          row.spec = cfg.norms[s];
          row.norm_u0 = base_norms[s];
          row.norm_ut = node_norms[s];
          row.ratio = row.norm_u0 > 0.0 ? row.norm_ut / row.norm_u0
                                        : (row.norm_ut == 0.0 ? 1.0 : kInfExponent);
          rows.push_back(row);
        }
      }
    }
  });

  NormReport report;
  report.experiment = name;
  report.config_fingerprint = cfg.fingerprint();
  report.points_per_axis = cfg.points_per_axis;
  report.segments = cfg.segments;
  for (const FieldRows& fr : per_field)
    report.rows.insert(report.rows.end(), fr.rows.begin(), fr.rows.end());
  report.sort_rows();
  report.build_summaries(cfg.norms);
  return report;
}

}  // namespace

void NormReport::sort_rows() {
  std::stable_sort(rows.begin(), rows.end(), [](const NormReportRow& a, const NormReportRow& b) {
    const int fa = a.spec.flavor == NormFlavor::modulation ? 0 : 1;
    const int fb = b.spec.flavor == NormFlavor::modulation ? 0 : 1;
    return std::tie(a.t, fa, a.spec.p, a.spec.q, a.spec.r, a.spec.rho) <
           std::tie(b.t, fb, b.spec.p, b.spec.q, b.spec.r, b.spec.rho);
  });
}

void NormReport::build_summaries(const std::vector<NormSpec>& specs) {
  summaries.clear();
  for (const NormSpec& spec : specs) {
    NormSummary summary;
    summary.spec = spec;
    for (const NormReportRow& row : rows) {
      if (row.spec.flavor == spec.flavor && row.spec.p == spec.p && row.spec.q == spec.q &&
          row.spec.r == spec.r && row.spec.rho == spec.rho)
        summary.sup_ratio = std::max(summary.sup_ratio, row.ratio);
    }
    summaries.push_back(summary);
  }
}

NormReport run_theorem1_experiment(const ExperimentConfig& cfg) {
  return run_experiment(cfg, false, "theorem1");
}

NormReport run_theorem2_experiment(const ExperimentConfig& cfg) {
  return run_experiment(cfg, true, "theorem2");
}

}  // namespace wprop
