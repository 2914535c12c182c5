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

#include "wprop/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace wprop {

namespace {
// FFTW plan creation mutates global state; execution is reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FourierTransformer::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

FourierTransformer::FourierTransformer(const PhaseSpaceGrid& grid)
    : grid_(grid), plans_(std::make_unique<Plans>()) {
  const std::size_t count = grid_.point_count();
  scratch_.resize(count);

  parity_.resize(count);
  int idx[kMaxGridDim];
  for (std::size_t k = 0; k < count; ++k) {
    grid_.unflatten(k, idx);
    int s = 0;
    for (int a = 0; a < grid_.dim(); ++a) s += idx[a];
    parity_[k] = static_cast<signed char>((s & 1) ? -1 : 1);
  }

  std::vector<int> dims(static_cast<std::size_t>(grid_.dim()), grid_.points_per_axis());
  auto* buf = reinterpret_cast<fftw_complex*>(scratch_.data());
  std::lock_guard<std::mutex> lock(planner_mutex());
  plans_->forward = fftw_plan_dft(grid_.dim(), dims.data(), buf, buf, FFTW_FORWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->backward = fftw_plan_dft(grid_.dim(), dims.data(), buf, buf, FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
}

FourierTransformer::~FourierTransformer() {
  if (plans_) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plans_->forward) fftw_destroy_plan(plans_->forward);
    if (plans_->backward) fftw_destroy_plan(plans_->backward);
  }
}

FourierTransformer::FourierTransformer(FourierTransformer&&) noexcept = default;
FourierTransformer& FourierTransformer::operator=(FourierTransformer&&) noexcept = default;

void FourierTransformer::raw_forward(Complex* data) const {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plans_->forward, buf, buf);
}

void FourierTransformer::raw_backward(Complex* data) const {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plans_->backward, buf, buf);
}

SpinorField FourierTransformer::forward(const SpinorField& f) const {
  const std::size_t count = grid_.point_count();
  const double scale =
      grid_.cell_volume_x() * std::pow(2.0 * M_PI, -grid_.dim());
  SpinorField out(grid_, f.n);
  for (int c = 0; c < f.n; ++c) {
    for (std::size_t k = 0; k < count; ++k) scratch_[k] = f.at(k, c);
    raw_forward(scratch_.data());
    for (std::size_t k = 0; k < count; ++k)
      out.at(k, c) = scratch_[k] * (scale * parity_[k]);
  }
  return out;
}

SpinorField FourierTransformer::inverse(const SpinorField& F) const {
  const std::size_t count = grid_.point_count();
  const double scale = grid_.cell_volume_xi();
  SpinorField out(grid_, F.n);
  for (int c = 0; c < F.n; ++c) {
    for (std::size_t k = 0; k < count; ++k)
      scratch_[k] = F.at(k, c) * static_cast<double>(parity_[k]);
    raw_backward(scratch_.data());
    for (std::size_t k = 0; k < count; ++k) out.at(k, c) = scratch_[k] * scale;
  }
  return out;
}

}  // namespace wprop
