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

#include "uc/cost.hpp"

#include <algorithm>
#include <cmath>

namespace uc {

double fuel_cost(const UnitSpec& u, double power) { return u.a + u.b * power + u.c * power * power; }

double startup_cost(const UnitSpec& u, int off_steps) {
  return off_steps <= u.t_down_min + u.cold_start_time ? u.hot_start_cost : u.cold_start_cost;
}

int off_steps_before(const Instance& inst, const HistoryState& h, std::size_t i, std::size_t t) {
  if (t == 0) return inst.initial[i].initially_on ? 0 : inst.initial[i].steps_in_state;
  return h.t_off(i, t - 1);
}

int on_steps_before(const Instance& inst, const HistoryState& h, std::size_t i, std::size_t t) {
  if (t == 0) return inst.initial[i].initially_on ? inst.initial[i].steps_in_state : 0;
  return h.t_on(i, t - 1);
}

CostBreakdown production_cost(const Instance& inst, const Schedule& y, const Dispatch& p) {
  check_shape(inst, y, p);
  const HistoryState h = compute_history(inst, y);
  CostBreakdown out;
  out.per_time.assign(inst.horizon(), 0.0);
  for (std::size_t t = 0; t < inst.horizon(); ++t) {
    for (std::size_t i = 0; i < inst.unit_count(); ++i) {
      if (!y(i, t)) continue;
      const UnitSpec& u = inst.units[i];
      const double fuel = fuel_cost(u, p(i, t));
      double start = 0.0;
      if (!committed_before(inst, y, i, t)) start = startup_cost(u, off_steps_before(inst, h, i, t));
      out.fuel += fuel;
      out.startup += start;
      out.per_time[t] += fuel + start;
    }
  }
  out.total = out.fuel + out.startup;
  return out;
}

FeasibilityReport audit(const Instance& inst, const Schedule& y, const Dispatch& p,
                        const AuditTolerances& tol) {
  check_shape(inst, y, p);
  const HistoryState h = compute_history(inst, y);
  FeasibilityReport r;
  r.load_residual.assign(inst.horizon(), 0.0);
  r.reserve_deficit.assign(inst.horizon(), 0.0);

  for (std::size_t t = 0; t < inst.horizon(); ++t) {
    double supplied = 0.0, capacity = 0.0;
    for (std::size_t i = 0; i < inst.unit_count(); ++i) {
      if (!y(i, t)) continue;
      supplied += p(i, t);
      capacity += inst.units[i].p_max;
    }
    r.load_residual[t] = supplied - inst.load[t];
    r.reserve_deficit[t] = std::max(0.0, inst.load[t] + inst.reserve[t] - capacity);
  }

  for (std::size_t i = 0; i < inst.unit_count(); ++i) {
    const UnitSpec& u = inst.units[i];
    for (std::size_t t = 0; t < inst.horizon(); ++t) {
      const bool was_on = committed_before(inst, y, i, t);
      const bool is_on = y(i, t) != 0;
      if (is_on) {
        auto [lo, hi] = operating_range(inst, y, p, i, t);
        const double excess = std::max(lo - p(i, t), p(i, t) - hi);
        if (excess > tol.range_abs || !std::isfinite(p(i, t))) r.range_violations.push_back({i, t, excess});
      }
      if (was_on && !is_on && on_steps_before(inst, h, i, t) < u.t_up_min) {
        r.min_up_violations.push_back({i, t});
      }
      if (!was_on && is_on && off_steps_before(inst, h, i, t) < u.t_down_min) {
        r.min_down_violations.push_back({i, t});
      }
    }
  }

  bool ok = r.range_violations.empty() && r.min_up_violations.empty() &&
            r.min_down_violations.empty();
  for (std::size_t t = 0; t < inst.horizon(); ++t) {
    if (!(std::abs(r.load_residual[t]) <= tol.load_abs)) ok = false;
    if (r.reserve_deficit[t] > 0.0) ok = false;
  }
  r.feasible = ok;
  return r;
}

}  // namespace uc
