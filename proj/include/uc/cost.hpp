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

#pragma once

#include <cstddef>
#include <vector>

#include "uc/model.hpp"

namespace uc {

struct CostBreakdown {
  double fuel = 0.0;
  double startup = 0.0;
  double total = 0.0;
  std::vector<double> per_time;
};

struct RangeViolation {
  std::size_t unit;
  std::size_t step;
  double amount;  // MW outside the ramp-tightened range
};

struct UnitStep {
  std::size_t unit;
  std::size_t step;
  friend bool operator==(const UnitStep&, const UnitStep&) = default;
};

struct FeasibilityReport {
  std::vector<double> load_residual;  // sum_i p*y - L per step
  std::vector<RangeViolation> range_violations;
  std::vector<UnitStep> min_up_violations;
  std::vector<UnitStep> min_down_violations;
  std::vector<double> reserve_deficit;  // max(0, L + R - sum_i p_max*y)
  bool feasible = false;
};

struct AuditTolerances {
  double load_abs = 1.0;   // MW; published tables are rounded to 0.1 MW
  double range_abs = 0.1;  // MW slack on the operating range
};

double fuel_cost(const UnitSpec& unit, double power);

/// Hot start cost when the preceding off period is at most t_down + cold
/// start time, cold start cost otherwise.
double startup_cost(const UnitSpec& unit, int off_steps_before);

/// Consecutive off steps immediately preceding step t. 0 when the unit was on.
int off_steps_before(const Instance& instance, const HistoryState& history, std::size_t i,
                     std::size_t t);
/// Consecutive on steps immediately preceding step t. 0 when the unit was off.
int on_steps_before(const Instance& instance, const HistoryState& history, std::size_t i,
                    std::size_t t);

CostBreakdown production_cost(const Instance& instance, const Schedule& schedule,
                              const Dispatch& dispatch);

FeasibilityReport audit(const Instance& instance, const Schedule& schedule,
                        const Dispatch& dispatch, const AuditTolerances& tol = {});

}  // namespace uc
