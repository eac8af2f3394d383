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

// JSON documents exchanged with the command line: solution files, run
// reports, QUBO dumps and iteration traces. Steps and units are 1-based in
// every document.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "uc/cost.hpp"
#include "uc/hybrid.hpp"
#include "uc/model.hpp"
#include "uc/qubo.hpp"

namespace uc {

/// {"schedule": ["0101", ...], "dispatch": [[p_1, ..., p_N], ...],
///  "reported_cost": x?}, one entry per step.
struct SolutionFile {
  Schedule schedule;
  Dispatch dispatch;
  std::optional<double> reported_cost;
};

SolutionFile parse_solution(std::string_view text, const Instance& instance);
SolutionFile load_solution(const std::filesystem::path& path, const Instance& instance);
std::string serialize_solution(const Schedule& schedule, const Dispatch& dispatch,
                               std::optional<double> reported_cost = std::nullopt);

struct ReportInfo {
  std::string method;  // "hybrid", "exact", "dp" or "evaluate"
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_it;
  std::optional<double> reported_cost;
};

std::string cost_to_json(const CostBreakdown& cost);
std::string feasibility_to_json(const FeasibilityReport& report);

/// Schedule, dispatch, cost, feasibility, convergence iteration and trace.
std::string solution_report(const Instance& instance, const HybridSolution& solution,
                            const ReportInfo& info);

/// One JSON line; the quadratic part lists the nonzero upper triangle.
std::string qubo_to_json(const QuboProblem& q, std::optional<std::size_t> sweep = std::nullopt,
                         std::optional<std::size_t> step = std::nullopt);

/// One JSON line per refinement iteration.
std::string trace_line(const HybridTraceEntry& entry);

}  // namespace uc
