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

// Classical baselines for small instances.

#pragma once

#include <cstddef>

#include "uc/hybrid.hpp"
#include "uc/model.hpp"

namespace uc {

struct ReferenceLimits {
  std::size_t max_bits = 14;   // N*T ceiling for full enumeration
  std::size_t max_units = 12;  // 2^N states per layer for the DP
  double lambda = 1e4;
  std::size_t budget = 10000000;
};

/// Enumerates every schedule, dispatches the ones that pass reserve,
/// capacity and minimum up/down screening, and keeps the cheapest audited
/// feasible result. Ties go to the lower schedule index.
HybridSolution solve_exact(const Instance& instance, const ReferenceLimits& limits = {});

/// Dynamic program over commitment states with per-state economic dispatch
/// that ignores ramps, followed by one ramp-aware forward dispatch of the
/// chosen path. An upper bound, not a certificate.
HybridSolution solve_dp(const Instance& instance, const ReferenceLimits& limits = {});

}  // namespace uc
