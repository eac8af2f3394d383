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

#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.hpp"
#include "uc/dispatch.hpp"
#include "uc/hybrid.hpp"

using uc::testing::instance;

namespace {

uc::Schedule cols(std::initializer_list<const char*> c) {
  return uc::schedule_from_columns(std::vector<std::string>(c.begin(), c.end()));
}

uc::HybridConfig quick_config(std::uint64_t seed) {
  uc::HybridConfig cfg;
  cfg.seed = seed;
  cfg.qaoa.shots = 512;
  cfg.budget_final = 20000;
  return cfg;
}

}  // namespace

TEST_SUITE("hybrid") {
  TEST_CASE("convergence iteration of schedule sequences") {
    const uc::Schedule s1 = cols({"01", "10"});
    const uc::Schedule s2 = cols({"11", "10"});
    CHECK(uc::convergence_iteration({s1, s1, s1}) == 0);
    CHECK(uc::convergence_iteration({s1, s2, s2, s2}) == 1);
    CHECK_FALSE(uc::convergence_iteration({s1, s2, s1}).has_value());
    CHECK(uc::convergence_iteration({s1}) == 0);
    CHECK(uc::convergence_iteration({s2, s1, s2, s2}) == 2);
    CHECK_FALSE(uc::convergence_iteration(std::vector<uc::Schedule>{}).has_value());
  }

  TEST_CASE("convergence iteration read from a trace") {
    std::vector<uc::HybridTraceEntry> trace(3);
    trace[0].columns = {"0001", "0001", "0111"};
    trace[1].columns = {"0001", "0001", "0101"};
    trace[2].columns = {"0001", "0001", "0101"};
    CHECK(uc::convergence_iteration(trace) == 1);
  }

  TEST_CASE("loop counts come from the instance files") {
    using uc::QaoaMode;
    CHECK(uc::default_iterations(instance("uc_4a"), QaoaMode::standard) == 3);
    CHECK(uc::default_iterations(instance("uc_4b"), QaoaMode::warm_start) == 3);
    CHECK(uc::default_iterations(instance("uc_10a"), QaoaMode::standard) == 6);
    CHECK(uc::default_iterations(instance("uc_10b"), QaoaMode::warm_start) == 6);
    CHECK(uc::default_iterations(instance("uc_12a"), QaoaMode::standard) == 12);
    CHECK(uc::default_iterations(instance("uc_12a"), QaoaMode::warm_start) == 12);
    CHECK(uc::default_iterations(instance("uc_12b"), QaoaMode::standard) == 7);
    CHECK(uc::default_iterations(instance("uc_12b"), QaoaMode::warm_start) == 6);
  }

  TEST_CASE("derived seeds are deterministic and distinct") {
    std::set<std::uint64_t> seen;
    for (std::size_t sweep = 0; sweep < 20; ++sweep) {
      for (std::size_t t = 0; t < 24; ++t) {
        CHECK(uc::derive_seed(7, sweep, t) == uc::derive_seed(7, sweep, t));
        seen.insert(uc::derive_seed(7, sweep, t));
      }
    }
    CHECK(seen.size() == 20 * 24);
    CHECK(uc::derive_seed(7, 1, 2) != uc::derive_seed(8, 1, 2));
    CHECK(uc::derive_seed(7, 1, 2) != uc::derive_seed(7, 2, 1));
  }

  TEST_CASE("modal value bins and prefers the smaller on ties") {
    CHECK(uc::modal_value({1.0, 2.0, 2.0, 3.0}, 0.1) == doctest::Approx(2.0));
    CHECK(uc::modal_value({5.0, 3.0}, 0.1) == doctest::Approx(3.0));
    CHECK(uc::modal_value({29279.21, 29279.19, 30000.0}, 0.1) == doctest::Approx(29279.2));
    CHECK_FALSE(uc::modal_value({}, 0.1).has_value());
  }

  TEST_CASE("schedule hash tracks the schedule") {
    const uc::Schedule a = cols({"0101", "0101", "0111"});
    const uc::Schedule b = cols({"0101", "0111", "0101"});
    CHECK(uc::schedule_hash(a) == uc::schedule_hash(a));
    CHECK(uc::schedule_hash(a) != uc::schedule_hash(b));
    CHECK(uc::schedule_hash(a).size() == 16);
  }

  TEST_CASE("QUBO at a step ignores later steps") {
    const uc::Instance inst = instance("uc_10a");
    std::mt19937_64 rng(81);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
      uc::Schedule y = uc::make_schedule(inst);
      uc::Dispatch p = uc::make_dispatch(inst);
      for (std::size_t i = 0; i < inst.unit_count(); ++i) {
        for (std::size_t t = 0; t < inst.horizon(); ++t) {
          y(i, t) = static_cast<std::uint8_t>(rng() & 1U);
          p(i, t) = inst.units[i].p_max * unit(rng);
        }
      }
      const std::size_t t = rng() % inst.horizon();
      uc::Schedule y2 = y;
      uc::Dispatch p2 = p;
      for (std::size_t i = 0; i < inst.unit_count(); ++i) {
        for (std::size_t s = t; s < inst.horizon(); ++s) {
          y2(i, s) = static_cast<std::uint8_t>(rng() & 1U);
          if (s > t) p2(i, s) = inst.units[i].p_max * unit(rng);
        }
      }
      const uc::QuboProblem a = uc::build_qubo(
          inst, uc::build_context(inst, y, p, uc::compute_history(inst, y), t));
      const uc::QuboProblem b = uc::build_qubo(
          inst, uc::build_context(inst, y2, p2, uc::compute_history(inst, y2), t));
      CHECK(a.linear == b.linear);
      CHECK(a.quadratic == b.quadratic);
      CHECK(a.constant == b.constant);
      CHECK(a.pins == b.pins);
    }
  }

  TEST_CASE("no refinement loop leaves the first sweep and the final dispatch") {
    const uc::Instance inst = instance("uc_4b");
    uc::HybridConfig cfg = quick_config(12);
    cfg.n_it = 0;
    const uc::HybridSolution sol = uc::solve(inst, cfg);
    REQUIRE(sol.trace.size() == 1);
    CHECK(sol.convergence_iteration == 0);

    // Replay: sweep at full capacity, then the final dispatch.
    uc::Schedule y = uc::make_schedule(inst);
    const uc::Dispatch full = uc::testing::at_capacity(inst);
    for (std::size_t t = 0; t < inst.horizon(); ++t) {
      const auto ctx = uc::build_context(inst, y, full, uc::compute_history(inst, y), t);
      uc::QaoaConfig qc = cfg.qaoa;
      qc.seed = uc::derive_seed(cfg.seed, 0, t);
      const uc::QaoaResult r = uc::run_qaoa(uc::build_qubo(inst, ctx), qc);
      for (std::size_t i = 0; i < inst.unit_count(); ++i) y(i, t) = r.best_bits[i];
    }
    CHECK(sol.schedule == y);
    const uc::Dispatch p = uc::optimize_dispatch(inst, y, full, cfg.lambda_final, cfg.budget_final,
                                                 uc::derive_seed(cfg.seed, 1, inst.horizon()));
    CHECK(sol.dispatch == p);
  }

  TEST_CASE("solution bookkeeping is consistent") {
    const uc::Instance inst = instance("uc_4a");
    uc::HybridConfig cfg = quick_config(3);
    cfg.qaoa.mode = uc::QaoaMode::warm_start;
    std::size_t iterations_seen = 0, qubos_seen = 0;
    cfg.on_iteration = [&](const uc::HybridTraceEntry& e) { CHECK(e.iteration == iterations_seen++); };
    cfg.on_qubo = [&](std::size_t, std::size_t, const uc::QuboProblem&) { ++qubos_seen; };
    const uc::HybridSolution sol = uc::solve(inst, cfg);
    CHECK(sol.trace.size() == cfg.n_it + 1);
    CHECK(iterations_seen == cfg.n_it + 1);
    CHECK(qubos_seen == (cfg.n_it + 1) * inst.horizon());
    CHECK(sol.trace.back().columns == uc::schedule_columns(sol.schedule));
    CHECK(sol.convergence_iteration == uc::convergence_iteration(sol.trace));
    const uc::CostBreakdown again = uc::production_cost(inst, sol.schedule, sol.dispatch);
    CHECK(sol.cost.total == again.total);
    CHECK(sol.audit.feasible == uc::audit(inst, sol.schedule, sol.dispatch).feasible);
  }

  TEST_CASE("identical seeds reproduce the run") {
    const uc::Instance inst = instance("uc_4a");
    const uc::HybridSolution a = uc::solve(inst, quick_config(21));
    const uc::HybridSolution b = uc::solve(inst, quick_config(21));
    CHECK(a.schedule == b.schedule);
    CHECK(a.dispatch == b.dispatch);
    CHECK(a.cost.total == b.cost.total);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t k = 0; k < a.trace.size(); ++k) {
      CHECK(a.trace[k].schedule_hash == b.trace[k].schedule_hash);
    }
  }

  TEST_CASE("errors abort with the partial trace") {
    const uc::Instance inst = instance("uc_4a");
    uc::HybridConfig cfg = quick_config(1);
    cfg.on_iteration = [](const uc::HybridTraceEntry& e) {
      if (e.iteration == 1) throw std::runtime_error("stop");
    };
    try {
      uc::solve(inst, cfg);
      FAIL("expected the run to abort");
    } catch (const uc::HybridAborted& e) {
      CHECK(e.partial_trace().size() == 2);
    }

    uc::HybridConfig tiny = quick_config(1);
    tiny.qaoa.max_qubits = 6;
    try {
      uc::solve(inst, tiny);
      FAIL("expected the run to abort");
    } catch (const uc::HybridAborted& e) {
      CHECK(e.partial_trace().empty());
    }
  }

  TEST_CASE("standard UC_4b runs settle on the first sweep") {
    const uc::Instance inst = instance("uc_4b");
    std::vector<double> costs;
    std::vector<long> convergence;  // -1 for never settled
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      uc::HybridConfig cfg;
      cfg.seed = seed;
      cfg.n_it = 3;
      const uc::HybridSolution sol = uc::solve(inst, cfg);
      costs.push_back(sol.cost.total);
      convergence.push_back(sol.convergence_iteration ? long(*sol.convergence_iteration) : -1);
    }
    const double modal = *uc::modal_value(costs, 0.1);
    std::map<long, std::size_t> in_mode;
    for (std::size_t k = 0; k < costs.size(); ++k) {
      if (std::abs(costs[k] - modal) <= 0.05) ++in_mode[convergence[k]];
    }
    REQUIRE_FALSE(in_mode.empty());
    long best = in_mode.begin()->first;
    for (const auto& [value, count] : in_mode) {
      if (count > in_mode[best]) best = value;
    }
    CHECK(best == 0);
  }
}
