// Copyright 2026 The uc-hybrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Derivative-free bounded minimization.
//
// A linear-model trust-region method over a simplex of m+1 points, in the
// spirit of Powell's COBYLA: the model gradient comes from interpolating the
// simplex, steps minimize the model inside a ball, and the simplex geometry
// is repaired whenever it degenerates. The resolution rho only decreases;
// the trust radius delta may expand on successful steps but never falls
// below rho. Bounds are honored by projecting every trial point onto the box.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace uc::optim {

using Objective = std::function<double(std::span<const double>)>;

struct Problem {
  std::size_t dimension = 0;
  Objective objective;
  std::vector<double> lower;  // empty means unbounded; entries may be -inf
  std::vector<double> upper;  // empty means unbounded; entries may be +inf
  std::size_t max_evaluations = 1000;
  double tolerance = 1e-6;     // final resolution rho_end
  double initial_radius = 1.0;  // rho_begin
};

struct Result {
  std::vector<double> x_best;
  double f_best = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Minimizes `problem.objective` starting from `x0` (projected onto the box).
/// Deterministic for fixed inputs; `seed` only drives the fallback direction
/// used when the interpolated gradient vanishes.
Result minimize(const Problem& problem, std::span<const double> x0, std::uint64_t seed = 0);

}  // namespace uc::optim
