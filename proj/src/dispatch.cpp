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

#include "uc/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "uc/cost.hpp"
#include "uc/error.hpp"
#include "uc/optim.hpp"

namespace uc {

double dispatch_objective(const Instance& inst, const Schedule& y, std::span<const double> p,
                          double lambda) {
  check_shape(inst, y);
  const std::size_t n = inst.unit_count();
  const std::size_t steps = inst.horizon();
  if (p.size() != n * steps) {
    throw DimensionError("dispatch vector has " + std::to_string(p.size()) + " entries, expected " +
                         std::to_string(n * steps));
  }
  double fuel = 0.0, penalty = 0.0;
  for (std::size_t t = 0; t < steps; ++t) {
    double supplied = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!y(i, t)) continue;
      const double pit = p[i * steps + t];
      fuel += fuel_cost(inst.units[i], pit);
      supplied += pit;
    }
    const double r = supplied - inst.load[t];
    penalty += r * r;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const UnitSpec& u = inst.units[i];
    for (std::size_t t = 0; t < steps; ++t) {
      if (!y(i, t) || !committed_before(inst, y, i, t)) continue;
      const double prev = t == 0 ? inst.initial[i].initial_power : p[i * steps + t - 1];
      const double pit = p[i * steps + t];
      const double lo = std::max(u.p_min, prev - u.ramp_down);
      const double hi = std::min(u.p_max, prev + u.ramp_up);
      const double below = std::max(0.0, lo - pit);
      const double above = std::max(0.0, pit - hi);
      penalty += below * below + above * above;
    }
  }
  return fuel + lambda * penalty;
}

std::vector<double> lambda_iteration(std::span<const double> lo, std::span<const double> hi,
                                     std::span<const double> b, std::span<const double> c,
                                     double demand) {
  const std::size_t n = lo.size();
  std::vector<double> p(n);
  double sum_lo = 0.0, sum_hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum_lo += lo[i];
    sum_hi += hi[i];
  }
  if (n == 0) return p;
  if (demand <= sum_lo) return {lo.begin(), lo.end()};
  if (demand >= sum_hi) return {hi.begin(), hi.end()};

  auto allocate = [&](double lam) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double curvature = std::max(c[i], 1e-9);
      p[i] = std::clamp((lam - b[i]) / (2.0 * curvature), lo[i], hi[i]);
      total += p[i];
    }
    return total;
  };
  double lam_lo = std::numeric_limits<double>::infinity();
  double lam_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double curvature = std::max(c[i], 1e-9);
    lam_lo = std::min(lam_lo, b[i] + 2.0 * curvature * lo[i]);
    lam_hi = std::max(lam_hi, b[i] + 2.0 * curvature * hi[i]);
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lam_lo + lam_hi);
    if (allocate(mid) < demand) {
      lam_lo = mid;
    } else {
      lam_hi = mid;
    }
    if (std::abs(allocate(0.5 * (lam_lo + lam_hi)) - demand) < 1e-9) break;
  }
  double total = allocate(0.5 * (lam_lo + lam_hi));
  // Spread the last rounding residual over units with room.
  double residual = demand - total;
  for (std::size_t i = 0; i < n && std::abs(residual) > 0.0; ++i) {
    const double moved = std::clamp(p[i] + residual, lo[i], hi[i]) - p[i];
    p[i] += moved;
    residual -= moved;
  }
  return p;
}

Dispatch economic_dispatch(const Instance& inst, const Schedule& y, bool respect_ramps) {
  check_shape(inst, y);
  const std::size_t n = inst.unit_count();
  Dispatch p = make_dispatch(inst);
  for (std::size_t t = 0; t < inst.horizon(); ++t) {
    std::vector<std::size_t> on;
    std::vector<double> lo, hi, b, c;
    for (std::size_t i = 0; i < n; ++i) {
      if (!y(i, t)) continue;
      const UnitSpec& u = inst.units[i];
      auto range = respect_ramps ? operating_range(inst, y, p, i, t)
                                 : std::pair<double, double>{u.p_min, u.p_max};
      if (range.first > range.second) range.first = range.second;
      on.push_back(i);
      lo.push_back(range.first);
      hi.push_back(range.second);
      b.push_back(u.b);
      c.push_back(u.c);
    }
    const std::vector<double> alloc = lambda_iteration(lo, hi, b, c, inst.load[t]);
    for (std::size_t k = 0; k < on.size(); ++k) p(on[k], t) = alloc[k];
  }
  return p;
}

Dispatch optimize_dispatch(const Instance& inst, const Schedule& y, const Dispatch& p_init,
                           double lambda, std::size_t budget, std::uint64_t seed) {
  check_shape(inst, y, p_init);
  const std::size_t steps = inst.horizon();
  std::vector<std::size_t> slots;  // flat indices of committed slots
  std::vector<double> lower, upper;
  for (std::size_t i = 0; i < inst.unit_count(); ++i) {
    for (std::size_t t = 0; t < steps; ++t) {
      if (!y(i, t)) continue;
      slots.push_back(i * steps + t);
      lower.push_back(inst.units[i].p_min);
      upper.push_back(inst.units[i].p_max);
    }
  }
  Dispatch out = make_dispatch(inst);
  if (slots.empty()) return out;

  std::vector<double> full(inst.unit_count() * steps, 0.0);
  auto objective = [&](std::span<const double> x) {
    for (std::size_t k = 0; k < slots.size(); ++k) full[slots[k]] = x[k];
    return dispatch_objective(inst, y, full, lambda);
  };

  // Start from the better of the given dispatch and a ramp-aware economic
  // dispatch of the same schedule.
  std::vector<double> x0(slots.size()), x_ed(slots.size());
  const Dispatch ed = economic_dispatch(inst, y, true);
  for (std::size_t k = 0; k < slots.size(); ++k) {
    x0[k] = std::clamp(p_init.flat()[slots[k]], lower[k], upper[k]);
    if (!std::isfinite(x0[k])) x0[k] = upper[k];
    x_ed[k] = std::clamp(ed.flat()[slots[k]], lower[k], upper[k]);
  }
  if (objective(x_ed) < objective(x0)) x0 = x_ed;

  optim::Problem prob;
  prob.dimension = slots.size();
  prob.objective = objective;
  prob.lower = lower;
  prob.upper = upper;
  prob.max_evaluations = std::max<std::size_t>(1, budget);
  prob.tolerance = 1e-6;
  prob.initial_radius = 1.0;
  const optim::Result r = optim::minimize(prob, x0, seed);
  for (std::size_t k = 0; k < slots.size(); ++k) out.flat()[slots[k]] = r.x_best[k];
  return out;
}

}  // namespace uc
