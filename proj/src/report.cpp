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

#include "uc/report.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "uc/error.hpp"

namespace uc {
namespace {

using nlohmann::json;

json cost_json(const CostBreakdown& c) {
  return {{"fuel", c.fuel}, {"startup", c.startup}, {"total", c.total}, {"per_time", c.per_time}};
}

json unit_steps(const std::vector<UnitStep>& v) {
  json out = json::array();
  for (const UnitStep& u : v) out.push_back({{"unit", u.unit + 1}, {"t", u.step + 1}});
  return out;
}

json feasibility_json(const FeasibilityReport& r) {
  json ranges = json::array();
  for (const RangeViolation& v : r.range_violations) {
    ranges.push_back({{"unit", v.unit + 1}, {"t", v.step + 1}, {"amount", v.amount}});
  }
  return {{"feasible", r.feasible},
          {"load_residual", r.load_residual},
          {"reserve_deficit", r.reserve_deficit},
          {"range_violations", ranges},
          {"min_up_violations", unit_steps(r.min_up_violations)},
          {"min_down_violations", unit_steps(r.min_down_violations)}};
}

json dispatch_json(const Dispatch& p) {
  json out = json::array();
  for (std::size_t t = 0; t < p.steps(); ++t) out.push_back(p.column(t));
  return out;
}

json trace_json(const HybridTraceEntry& e) {
  return {{"iteration", e.iteration},
          {"schedule", e.columns},
          {"schedule_hash", e.schedule_hash},
          {"dispatch_objective", e.dispatch_objective},
          {"total_cost", e.total_cost}};
}

}  // namespace

SolutionFile parse_solution(std::string_view text, const Instance& inst) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  if (!doc.is_object()) throw ParseError("<document>", "expected an object");
  const std::size_t n = inst.unit_count();
  const std::size_t steps = inst.horizon();

  auto sched = doc.find("schedule");
  if (sched == doc.end() || !sched->is_array()) throw ParseError("schedule", "expected an array");
  auto disp = doc.find("dispatch");
  if (disp == doc.end() || !disp->is_array()) throw ParseError("dispatch", "expected an array");
  if (sched->size() != steps || disp->size() != steps) {
    throw DimensionError("solution covers " + std::to_string(sched->size()) + "/" +
                         std::to_string(disp->size()) + " steps, instance has " +
                         std::to_string(steps));
  }
  SolutionFile out;
  std::vector<std::string> cols;
  for (std::size_t t = 0; t < steps; ++t) {
    const json& c = (*sched)[t];
    const std::string path = "schedule[" + std::to_string(t) + "]";
    if (!c.is_string()) throw ParseError(path, "expected a bitstring");
    const std::string s = c.get<std::string>();
    if (s.size() != n) {
      throw DimensionError(path + " has " + std::to_string(s.size()) + " units, instance has " +
                           std::to_string(n));
    }
    if (s.find_first_not_of("01") != std::string::npos) throw ParseError(path, "expected only 0 and 1");
    cols.push_back(s);
  }
  out.schedule = schedule_from_columns(cols);
  out.dispatch = make_dispatch(inst);
  for (std::size_t t = 0; t < steps; ++t) {
    const json& row = (*disp)[t];
    const std::string path = "dispatch[" + std::to_string(t) + "]";
    if (!row.is_array()) throw ParseError(path, "expected an array");
    if (row.size() != n) {
      throw DimensionError(path + " has " + std::to_string(row.size()) + " units, instance has " +
                           std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!row[i].is_number()) {
        throw ParseError(path + "[" + std::to_string(i) + "]", "expected a number");
      }
      out.dispatch(i, t) = row[i].get<double>();
    }
  }
  if (auto rc = doc.find("reported_cost"); rc != doc.end()) {
    if (!rc->is_number()) throw ParseError("reported_cost", "expected a number");
    out.reported_cost = rc->get<double>();
  }
  return out;
}

SolutionFile load_solution(const std::filesystem::path& path, const Instance& inst) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_solution(ss.str(), inst);
}

std::string serialize_solution(const Schedule& y, const Dispatch& p,
                               std::optional<double> reported_cost) {
  json doc = {{"schedule", schedule_columns(y)}, {"dispatch", dispatch_json(p)}};
  if (reported_cost) doc["reported_cost"] = *reported_cost;
  return doc.dump(2);
}

std::string cost_to_json(const CostBreakdown& cost) { return cost_json(cost).dump(); }

std::string feasibility_to_json(const FeasibilityReport& report) {
  return feasibility_json(report).dump();
}

std::string solution_report(const Instance& inst, const HybridSolution& s, const ReportInfo& info) {
  json doc;
  doc["instance"] = inst.name;
  doc["method"] = info.method;
  if (info.mode) doc["mode"] = *info.mode;
  if (info.seed) doc["seed"] = *info.seed;
  if (info.n_it) doc["n_it"] = *info.n_it;
  doc["schedule"] = schedule_columns(s.schedule);
  doc["dispatch"] = dispatch_json(s.dispatch);
  doc["cost"] = cost_json(s.cost);
  doc["feasibility"] = feasibility_json(s.audit);
  doc["convergence_iteration"] =
      s.convergence_iteration ? json(*s.convergence_iteration) : json(nullptr);
  if (info.reported_cost) {
    doc["reported_cost"] = *info.reported_cost;
    doc["relative_error"] = (s.cost.total - *info.reported_cost) / *info.reported_cost;
  }
  json trace = json::array();
  for (const HybridTraceEntry& e : s.trace) trace.push_back(trace_json(e));
  doc["trace"] = trace;
  return doc.dump(2);
}

std::string qubo_to_json(const QuboProblem& q, std::optional<std::size_t> sweep,
                         std::optional<std::size_t> step) {
  json doc;
  if (sweep) doc["sweep"] = *sweep;
  if (step) doc["t"] = *step + 1;
  doc["n_decision"] = q.n_decision;
  doc["n_slack"] = q.n_slack;
  doc["constant"] = q.constant;
  doc["linear"] = q.linear;
  json quad = json::array();
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i; j < q.size(); ++j) {
      if (q.quad(i, j) != 0.0) quad.push_back({i, j, q.quad(i, j)});
    }
  }
  doc["quadratic"] = quad;
  json slack = json::array();
  for (const SlackBlock& b : q.slack_layout) {
    slack.push_back({{"constraint", b.constraint},
                     {"first_bit", b.first_bit},
                     {"count", b.count},
                     {"weights", b.weights}});
  }
  doc["slack_layout"] = slack;
  return doc.dump();
}

std::string trace_line(const HybridTraceEntry& entry) { return trace_json(entry).dump(); }

}  // namespace uc
