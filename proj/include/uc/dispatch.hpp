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

// Continuous power allocation for a fixed commitment schedule.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uc/model.hpp"

namespace uc {

/// Fuel of committed slots plus lambda times the squared load residuals and
/// squared ramp violations of every on-on transition (including the one
/// from the initial condition). `p_flat` uses the Dispatch layout
/// (index i * T + t); entries of off slots are ignored.
double dispatch_objective(const Instance& instance, const Schedule& schedule,
                          std::span<const double> p_flat, double lambda);

/// Minimizes dispatch_objective over the committed slots with each power in
/// [p_min, p_max]. Off slots come back as 0.
Dispatch optimize_dispatch(const Instance& instance, const Schedule& schedule,
                           const Dispatch& p_init, double lambda, std::size_t budget,
                           std::uint64_t seed = 0);

/// Equal-marginal-cost allocation of `demand` over units with bounds [lo, hi]
/// and costs b*p + c*p^2, by bisection on the marginal cost. Demand outside
/// [sum lo, sum hi] saturates at the nearest bound.
std::vector<double> lambda_iteration(std::span<const double> lo, std::span<const double> hi,
                                     std::span<const double> b, std::span<const double> c,
                                     double demand);

/// Per-step economic dispatch of the committed units. With `respect_ramps`
/// each step uses the ramp-tightened range around the previous step's result.
Dispatch economic_dispatch(const Instance& instance, const Schedule& schedule,
                           bool respect_ramps);

}  // namespace uc
