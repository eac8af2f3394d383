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

#include "uc/hybrid.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "uc/dispatch.hpp"

namespace uc {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void sweep(const Instance& inst, const HybridConfig& cfg, std::size_t index, Schedule& y,
           const Dispatch& p) {
  for (std::size_t t = 0; t < inst.horizon(); ++t) {
    const HistoryState h = compute_history(inst, y);
    const TimeStepContext ctx = build_context(inst, y, p, h, t);
    const QuboProblem q = build_qubo(inst, ctx, cfg.weights);
    if (cfg.on_qubo) cfg.on_qubo(index, t, q);
    QaoaConfig qc = cfg.qaoa;
    qc.seed = derive_seed(cfg.seed, index, t);
    if (cfg.on_qaoa_start) cfg.on_qaoa_start(index, t);
    const QaoaResult r = run_qaoa(q, qc);
    if (cfg.on_qaoa_done) cfg.on_qaoa_done(index, t, r);
    for (std::size_t i = 0; i < inst.unit_count(); ++i) y(i, t) = r.best_bits[i];
  }
}

HybridTraceEntry record(const Instance& inst, const HybridConfig& cfg, std::size_t iteration,
                        const Schedule& y, const Dispatch& p) {
  HybridTraceEntry e;
  e.iteration = iteration;
  e.columns = schedule_columns(y);
  e.schedule_hash = schedule_hash(y);
  e.dispatch_objective = dispatch_objective(inst, y, p.flat(), cfg.lambda_loop);
  e.total_cost = production_cost(inst, y, p).total;
  return e;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t run_seed, std::size_t sweep, std::size_t t) {
  return splitmix(splitmix(splitmix(run_seed) ^ static_cast<std::uint64_t>(sweep)) ^
                  static_cast<std::uint64_t>(t));
}

std::string schedule_hash(const Schedule& y) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::string& col : schedule_columns(y)) {
    for (char c : col) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    h ^= '|';
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<std::size_t> convergence_iteration(const std::vector<Schedule>& schedules) {
  if (schedules.empty()) return std::nullopt;
  const std::size_t last = schedules.size() - 1;
  if (last >= 1 && !(schedules[last] == schedules[last - 1])) return std::nullopt;
  std::size_t k = last;
  while (k > 0 && schedules[k - 1] == schedules[last]) --k;
  return k;
}

std::optional<std::size_t> convergence_iteration(const std::vector<HybridTraceEntry>& trace) {
  std::vector<Schedule> schedules;
  schedules.reserve(trace.size());
  for (const HybridTraceEntry& e : trace) schedules.push_back(schedule_from_columns(e.columns));
  return convergence_iteration(schedules);
}

std::size_t default_iterations(const Instance& inst, QaoaMode mode) {
  const std::optional<int>& v =
      mode == QaoaMode::standard ? inst.loop_defaults.standard : inst.loop_defaults.warm_start;
  return v ? static_cast<std::size_t>(*v) : 3;
}

std::optional<double> modal_value(const std::vector<double>& values, double resolution) {
  if (values.empty()) return std::nullopt;
  std::map<long long, std::size_t> counts;
  for (double v : values) ++counts[std::llround(v / resolution)];
  long long best = counts.begin()->first;
  std::size_t best_count = 0;
  for (const auto& [key, count] : counts) {
    if (count > best_count) {
      best = key;
      best_count = count;
    }
  }
  return static_cast<double>(best) * resolution;
}

HybridSolution solve(const Instance& inst, const HybridConfig& cfg) {
  validate(inst);
  HybridSolution sol;
  Schedule y = make_schedule(inst);
  Dispatch p = make_dispatch(inst);
  for (std::size_t i = 0; i < inst.unit_count(); ++i) {
    for (std::size_t t = 0; t < inst.horizon(); ++t) p(i, t) = inst.units[i].p_max;
  }

  auto push = [&](std::size_t iteration) {
    sol.trace.push_back(record(inst, cfg, iteration, y, p));
    if (cfg.on_iteration) cfg.on_iteration(sol.trace.back());
  };

  try {
    sweep(inst, cfg, 0, y, p);
    push(0);
    for (std::size_t k = 1; k <= cfg.n_it; ++k) {
      p = optimize_dispatch(inst, y, p, cfg.lambda_loop, cfg.budget_loop,
                            derive_seed(cfg.seed, k, inst.horizon()));
      sweep(inst, cfg, k, y, p);
      push(k);
    }
    p = optimize_dispatch(inst, y, p, cfg.lambda_final, cfg.budget_final,
                          derive_seed(cfg.seed, cfg.n_it + 1, inst.horizon()));
  } catch (const HybridAborted&) {
    throw;
  } catch (const std::exception& e) {
    throw HybridAborted(e.what(), sol.trace);
  }

  sol.schedule = y;
  sol.dispatch = p;
  sol.cost = production_cost(inst, y, p);
  sol.audit = audit(inst, y, p);
  sol.convergence_iteration = convergence_iteration(sol.trace);
  return sol;
}

}  // namespace uc
