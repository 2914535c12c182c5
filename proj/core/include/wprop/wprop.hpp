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

#ifndef WPROP_WPROP_HPP
#define WPROP_WPROP_HPP

#include "wprop/clifford.hpp"
#include "wprop/config.hpp"
#include "wprop/errors.hpp"
#include "wprop/experiments.hpp"
#include "wprop/fields.hpp"
#include "wprop/fourier.hpp"
#include "wprop/gabor.hpp"
#include "wprop/grid.hpp"
#include "wprop/numerics.hpp"
#include "wprop/parametrix.hpp"
#include "wprop/potentials.hpp"
#include "wprop/report.hpp"
#include "wprop/solver.hpp"
#include "wprop/spaces.hpp"
#include "wprop/window.hpp"

#endif  // WPROP_WPROP_HPP
