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

#include "uc/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "uc/cost.hpp"
#include "uc/dispatch.hpp"
#include "uc/error.hpp"

namespace uc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool column_can_serve(const Instance& inst, const Schedule& y, std::size_t t) {
  double cap = 0.0, floor = 0.0;
  for (std::size_t i = 0; i < inst.unit_count(); ++i) {
    if (!y(i, t)) continue;
    cap += inst.units[i].p_max;
    floor += inst.units[i].p_min;
  }
  return cap >= inst.load[t] + inst.reserve[t] && floor <= inst.load[t];
}

bool respects_min_times(const Instance& inst, const Schedule& y) {
  const HistoryState h = compute_history(inst, y);
  for (std::size_t i = 0; i < inst.unit_count(); ++i) {
    const UnitSpec& u = inst.units[i];
    for (std::size_t t = 0; t < inst.horizon(); ++t) {
      const bool was = committed_before(inst, y, i, t);
      const bool is = y(i, t) != 0;
      if (was && !is && on_steps_before(inst, h, i, t) < u.t_up_min) return false;
      if (!was && is && off_steps_before(inst, h, i, t) < u.t_down_min) return false;
    }
  }
  return true;
}

// Fuel of the ramp-free economic dispatch plus start-up costs.
double cost_lower_bound(const Instance& inst, const Schedule& y, const Dispatch& ed) {
  return production_cost(inst, y, ed).total;
}

HybridSolution finish(const Instance& inst, Schedule y, Dispatch p) {
  HybridSolution s;
  s.cost = production_cost(inst, y, p);
  s.audit = audit(inst, y, p);
  s.schedule = std::move(y);
  s.dispatch = std::move(p);
  return s;
}

bool balanced(const Instance& inst, const Schedule& y, const Dispatch& p) {
  for (std::size_t t = 0; t < inst.horizon(); ++t) {
    double s = 0.0;
    for (std::size_t i = 0; i < inst.unit_count(); ++i) {
      if (y(i, t)) s += p(i, t);
    }
    if (std::abs(s - inst.load[t]) > 1e-6) return false;
  }
  return true;
}

bool ramps_hold(const Instance& inst, const Schedule& y, const Dispatch& p) {
  for (std::size_t i = 0; i < inst.unit_count(); ++i) {
    for (std::size_t t = 0; t < inst.horizon(); ++t) {
      if (!y(i, t)) continue;
      const auto [lo, hi] = operating_range(inst, y, p, i, t);
      if (p(i, t) < lo - 1e-9 || p(i, t) > hi + 1e-9) return false;
    }
  }
  return true;
}

}  // namespace

HybridSolution solve_exact(const Instance& inst, const ReferenceLimits& limits) {
  validate(inst);
  const std::size_t n = inst.unit_count();
  const std::size_t steps = inst.horizon();
  const std::size_t bits = n * steps;
  if (bits > limits.max_bits || bits >= 63) {
    throw LimitError("exhaustive search over " + std::to_string(bits) +
                     " commitment bits exceeds the limit of " + std::to_string(limits.max_bits) +
                     "; use the dp method");
  }

  struct Candidate {
    std::uint64_t mask;
    double bound;
    Dispatch ed;
  };
  std::vector<Candidate> survivors;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    Schedule y = make_schedule(inst);
    for (std::size_t k = 0; k < bits; ++k) y.flat()[k] = (mask >> k) & 1U;
    bool ok = true;
    for (std::size_t t = 0; t < steps && ok; ++t) ok = column_can_serve(inst, y, t);
    if (!ok || !respects_min_times(inst, y)) continue;
    Dispatch ed = economic_dispatch(inst, y, false);
    survivors.push_back({mask, cost_lower_bound(inst, y, ed), std::move(ed)});
  }
  std::stable_sort(survivors.begin(), survivors.end(),
                   [](const Candidate& a, const Candidate& b) { return a.bound < b.bound; });

  bool found = false;
  HybridSolution best;
  std::uint64_t best_mask = 0;
  for (const Candidate& c : survivors) {
    if (found && c.bound > best.cost.total) break;
    Schedule y = make_schedule(inst);
    for (std::size_t k = 0; k < bits; ++k) y.flat()[k] = (c.mask >> k) & 1U;
    Dispatch p = balanced(inst, y, c.ed) && ramps_hold(inst, y, c.ed)
                     ? c.ed
                     : optimize_dispatch(inst, y, c.ed, limits.lambda, limits.budget);
    HybridSolution s = finish(inst, y, std::move(p));
    if (!s.audit.feasible) continue;
    const bool better = !found || s.cost.total < best.cost.total - 1e-9 ||
                        (std::abs(s.cost.total - best.cost.total) <= 1e-9 && c.mask < best_mask);
    if (better) {
      best = std::move(s);
      best_mask = c.mask;
      found = true;
    }
  }
  if (!found) throw InfeasibleSolutionError("no enumerated schedule passes the audit");
  return best;
}

HybridSolution solve_dp(const Instance& inst, const ReferenceLimits& limits) {
  validate(inst);
  const std::size_t n = inst.unit_count();
  const std::size_t steps = inst.horizon();
  if (n > limits.max_units || n >= 31) {
    throw LimitError(std::to_string(n) + " units exceed the dynamic-programming limit of " +
                     std::to_string(limits.max_units));
  }
  const std::size_t states = std::size_t{1} << n;

  struct Node {
    double cost = kInf;
    std::size_t pred = 0;
    std::vector<int> on, off;  // consecutive on/off steps up to this layer
  };
  std::vector<std::vector<Node>> layers(steps, std::vector<Node>(states));

  // Pre-horizon pseudo state.
  Node start;
  start.cost = 0.0;
  std::size_t start_state = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const InitialCondition& ic = inst.initial[i];
    start.on.push_back(ic.initially_on ? ic.steps_in_state : 0);
    start.off.push_back(ic.initially_on ? 0 : ic.steps_in_state);
    if (ic.initially_on) start_state |= std::size_t{1} << i;
  }

  std::vector<double> lo, hi, b, c;
  for (std::size_t t = 0; t < steps; ++t) {
    const std::vector<Node>* prev = t == 0 ? nullptr : &layers[t - 1];
    for (std::size_t s = 0; s < states; ++s) {
      lo.clear();
      hi.clear();
      b.clear();
      c.clear();
      double cap = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!((s >> i) & 1U)) continue;
        const UnitSpec& u = inst.units[i];
        lo.push_back(u.p_min);
        hi.push_back(u.p_max);
        b.push_back(u.b);
        c.push_back(u.c);
        cap += u.p_max;
      }
      const double floor = std::accumulate(lo.begin(), lo.end(), 0.0);
      if (cap < inst.load[t] + inst.reserve[t] || floor > inst.load[t]) continue;
      const std::vector<double> alloc = lambda_iteration(lo, hi, b, c, inst.load[t]);
      double fuel = 0.0;
      for (std::size_t i = 0, k = 0; i < n; ++i) {
        if ((s >> i) & 1U) fuel += fuel_cost(inst.units[i], alloc[k++]);
      }

      Node& node = layers[t][s];
      const std::size_t pred_count = t == 0 ? 1 : states;
      for (std::size_t q = 0; q < pred_count; ++q) {
        const Node& from = t == 0 ? start : (*prev)[q];
        const std::size_t from_state = t == 0 ? start_state : q;
        if (from.cost == kInf) continue;
        double startup = 0.0;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
          const bool was = (from_state >> i) & 1U;
          const bool is = (s >> i) & 1U;
          const UnitSpec& u = inst.units[i];
          if (was && !is && from.on[i] < u.t_up_min) ok = false;
          if (!was && is) {
            if (from.off[i] < u.t_down_min) ok = false;
            startup += startup_cost(u, from.off[i]);
          }
        }
        if (!ok) continue;
        const double total = from.cost + fuel + startup;
        if (total < node.cost) {
          node.cost = total;
          node.pred = q;
        }
      }
      if (node.cost == kInf) continue;
      const Node& from = t == 0 ? start : (*prev)[node.pred];
      node.on.resize(n);
      node.off.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        if ((s >> i) & 1U) {
          node.on[i] = from.on[i] + 1;
          node.off[i] = 0;
        } else {
          node.on[i] = 0;
          node.off[i] = from.off[i] + 1;
        }
      }
    }
  }

  std::vector<std::size_t> finals;
  for (std::size_t s = 0; s < states; ++s) {
    if (layers[steps - 1][s].cost < kInf) finals.push_back(s);
  }
  std::stable_sort(finals.begin(), finals.end(), [&](std::size_t a, std::size_t b2) {
    return layers[steps - 1][a].cost < layers[steps - 1][b2].cost;
  });

  for (std::size_t s : finals) {
    Schedule y = make_schedule(inst);
    std::size_t cur = s;
    for (std::size_t t = steps; t-- > 0;) {
      for (std::size_t i = 0; i < n; ++i) y(i, t) = (cur >> i) & 1U;
      cur = layers[t][cur].pred;
    }
    Dispatch p = economic_dispatch(inst, y, true);
    if (!balanced(inst, y, p)) p = optimize_dispatch(inst, y, p, limits.lambda, limits.budget);
    HybridSolution sol = finish(inst, std::move(y), std::move(p));
    if (sol.audit.feasible) return sol;
  }
  throw InfeasibleSolutionError("no dynamic-programming path passes the audit");
}

}  // namespace uc
