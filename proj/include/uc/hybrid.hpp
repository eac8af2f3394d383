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

// Alternating commitment/dispatch driver.
//
// 1. Every unit starts at full power.
// 2. A sweep over t solves the step-t QUBO with QAOA and writes column t of
//    the schedule; histories for t come from the columns written so far.
// 3. n_it times: re-optimize the dispatch with the loop penalty, then sweep.
// 4. A final dispatch with the high penalty produces the reported powers.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uc/cost.hpp"
#include "uc/error.hpp"
#include "uc/model.hpp"
#include "uc/qaoa.hpp"
#include "uc/qubo.hpp"

namespace uc {

struct HybridTraceEntry {
  std::size_t iteration = 0;         // 0 is the initial sweep
  std::vector<std::string> columns;  // schedule after the sweep, one bitstring per step
  std::string schedule_hash;
  double dispatch_objective = 0.0;  // loop penalty weight, dispatch used by the sweep
  double total_cost = 0.0;          // production cost of the pair
};

struct HybridConfig {
  std::size_t n_it = 3;
  double lambda_loop = 0.5;
  double lambda_final = 1e4;
  std::size_t budget_loop = 10000;
  std::size_t budget_final = 10000000;
  QaoaConfig qaoa;
  PenaltyWeights weights;
  std::uint64_t seed = 0;

  std::function<void(const HybridTraceEntry&)> on_iteration;
  std::function<void(std::size_t sweep, std::size_t t, const QuboProblem&)> on_qubo;
  /// Receives (sweep, t) before each QAOA call, e.g. to route its trace.
  std::function<void(std::size_t sweep, std::size_t t)> on_qaoa_start;
  std::function<void(std::size_t sweep, std::size_t t, const QaoaResult&)> on_qaoa_done;
};

struct HybridSolution {
  Schedule schedule;
  Dispatch dispatch;
  CostBreakdown cost;
  FeasibilityReport audit;
  std::optional<std::size_t> convergence_iteration;
  std::vector<HybridTraceEntry> trace;
};

/// Raised when a subsystem fails mid-run; carries the iterations completed.
class HybridAborted : public Error {
 public:
  HybridAborted(const std::string& what, std::vector<HybridTraceEntry> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<HybridTraceEntry>& partial_trace() const noexcept { return partial_; }

 private:
  std::vector<HybridTraceEntry> partial_;
};

HybridSolution solve(const Instance& instance, const HybridConfig& cfg);

/// Smallest k such that every schedule from k on is identical; none when
/// the last two differ.
std::optional<std::size_t> convergence_iteration(const std::vector<Schedule>& schedules);
std::optional<std::size_t> convergence_iteration(const std::vector<HybridTraceEntry>& trace);

/// Loop count stored with the instance for `mode`, else 3.
std::size_t default_iterations(const Instance& instance, QaoaMode mode);

/// Seed of the QAOA call at (sweep, t) for a run seed.
std::uint64_t derive_seed(std::uint64_t run_seed, std::size_t sweep, std::size_t t);

/// FNV-1a of the schedule bitstrings, as 16 hex digits.
std::string schedule_hash(const Schedule& schedule);

/// Most frequent value after rounding to `resolution`; ties go to the
/// smaller value. None for an empty input.
std::optional<double> modal_value(const std::vector<double>& values, double resolution);

}  // namespace uc
