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

#include "uc/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace uc {

namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + key, "missing required key");
  return *it;
}

double number_field(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) throw ParseError(path + key, "expected a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(path + key, "expected a finite number");
  return x;
}

int integer_field(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer()) throw ParseError(path + key, "expected an integer");
  return v.get<int>();
}

std::vector<double> number_array(const json& obj, const std::string& key) {
  const json& v = require(obj, key, "");
  if (!v.is_array()) throw ParseError(key, "expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number()) {
      throw ParseError(key + "[" + std::to_string(k) + "]", "expected a number");
    }
    out.push_back(v[k].get<double>());
  }
  return out;
}

UnitSpec parse_unit(const json& u, const std::string& path) {
  if (!u.is_object()) throw ParseError(path, "expected an object");
  UnitSpec s;
  s.p_min = number_field(u, "p_min", path);
  s.p_max = number_field(u, "p_max", path);
  s.a = number_field(u, "a", path);
  s.b = number_field(u, "b", path);
  s.c = number_field(u, "c", path);
  s.hot_start_cost = number_field(u, "hot_start", path);
  s.cold_start_cost = number_field(u, "cold_start", path);
  s.cold_start_time = integer_field(u, "cold_start_time", path);
  s.t_down_min = integer_field(u, "t_down", path);
  s.t_up_min = integer_field(u, "t_up", path);
  s.ramp_down = number_field(u, "ramp_down", path);
  s.ramp_up = number_field(u, "ramp_up", path);
  return s;
}

InitialCondition parse_initial(const json& v, const std::string& path) {
  if (!v.is_object()) throw ParseError(path, "expected an object");
  InitialCondition ic;
  const json& on = require(v, "on", path);
  if (!on.is_boolean()) throw ParseError(path + "on", "expected a boolean");
  ic.initially_on = on.get<bool>();
  ic.steps_in_state = integer_field(v, "steps", path);
  ic.initial_power = v.contains("power") ? number_field(v, "power", path) : 0.0;
  return ic;
}

std::string unit_label(std::size_t i) { return "unit " + std::to_string(i + 1); }

}  // namespace

InitialCondition default_initial_condition(const UnitSpec& unit) {
  return {false, unit.t_down_min + unit.cold_start_time + 1, 0.0};
}

void validate(const Instance& inst) {
  if (inst.units.empty()) throw ValidationError("instance has no units");
  if (inst.load.empty()) throw ValidationError("instance has an empty horizon");
  if (inst.reserve.size() != inst.load.size()) {
    throw ValidationError("reserve has " + std::to_string(inst.reserve.size()) +
                          " entries but load has " + std::to_string(inst.load.size()));
  }
  if (inst.initial.size() != inst.units.size()) {
    throw ValidationError("initial conditions do not match the unit count");
  }
  for (std::size_t i = 0; i < inst.units.size(); ++i) {
    const UnitSpec& u = inst.units[i];
    const std::string who = unit_label(i);
    if (!(u.p_min >= 0.0 && u.p_min <= u.p_max)) {
      throw ValidationError(who + ": requires 0 <= p_min <= p_max");
    }
    if (u.c < 0.0) throw ValidationError(who + ": quadratic cost c must be nonnegative");
    if (u.hot_start_cost > u.cold_start_cost) {
      throw ValidationError(who + ": hot start cost exceeds cold start cost");
    }
    if (u.cold_start_time < 0 || u.t_down_min < 0 || u.t_up_min < 0) {
      throw ValidationError(who + ": step counts must be nonnegative");
    }
    if (u.ramp_down < 0.0 || u.ramp_up < 0.0) {
      throw ValidationError(who + ": ramp limits must be nonnegative");
    }
    const InitialCondition& ic = inst.initial[i];
    if (ic.steps_in_state < 1) throw ValidationError(who + ": initial steps must be >= 1");
    if (ic.initially_on) {
      if (ic.initial_power < u.p_min || ic.initial_power > u.p_max) {
        throw ValidationError(who + ": initial power outside [p_min, p_max]");
      }
    } else if (ic.initial_power != 0.0) {
      throw ValidationError(who + ": initial power must be 0 for an off unit");
    }
  }
  double capacity = 0.0;
  for (const UnitSpec& u : inst.units) capacity += u.p_max;
  for (std::size_t t = 0; t < inst.load.size(); ++t) {
    if (!(inst.load[t] >= 0.0) || !(inst.reserve[t] >= 0.0)) {
      throw ValidationError("load and reserve must be nonnegative at t=" + std::to_string(t + 1));
    }
    if (capacity < inst.load[t] + inst.reserve[t]) {
      std::ostringstream msg;
      msg << "infeasible at t=" << t + 1 << ": total capacity " << capacity
          << " MW is below load plus reserve " << inst.load[t] + inst.reserve[t] << " MW";
      throw InfeasibleInstanceError(t, msg.str());
    }
  }
}

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  if (!doc.is_object()) throw ParseError("<document>", "expected a JSON object");

  Instance inst;
  const json& name = require(doc, "name", "");
  if (!name.is_string()) throw ParseError("name", "expected a string");
  inst.name = name.get<std::string>();

  const json& units = require(doc, "units", "");
  if (!units.is_array()) throw ParseError("units", "expected an array");
  for (std::size_t i = 0; i < units.size(); ++i) {
    const std::string path = "units[" + std::to_string(i) + "].";
    inst.units.push_back(parse_unit(units[i], path));
    if (units[i].contains("initial")) {
      inst.initial.push_back(parse_initial(units[i]["initial"], path + "initial."));
    } else {
      inst.initial.push_back(default_initial_condition(inst.units.back()));
    }
  }
  inst.load = number_array(doc, "load");
  inst.reserve = number_array(doc, "reserve");

  if (auto it = doc.find("n_it"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("n_it", "expected an object");
    if (it->contains("standard")) inst.loop_defaults.standard = integer_field(*it, "standard", "n_it.");
    if (it->contains("warm_start")) {
      inst.loop_defaults.warm_start = integer_field(*it, "warm_start", "n_it.");
    }
  }

  validate(inst);
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& inst) {
  json doc;
  doc["name"] = inst.name;
  json units = json::array();
  for (std::size_t i = 0; i < inst.units.size(); ++i) {
    const UnitSpec& u = inst.units[i];
    json ju = {{"p_min", u.p_min},
               {"p_max", u.p_max},
               {"a", u.a},
               {"b", u.b},
               {"c", u.c},
               {"hot_start", u.hot_start_cost},
               {"cold_start", u.cold_start_cost},
               {"cold_start_time", u.cold_start_time},
               {"t_down", u.t_down_min},
               {"t_up", u.t_up_min},
               {"ramp_down", u.ramp_down},
               {"ramp_up", u.ramp_up}};
    const InitialCondition& ic = inst.initial[i];
    ju["initial"] = {{"on", ic.initially_on}, {"steps", ic.steps_in_state},
                     {"power", ic.initial_power}};
    units.push_back(std::move(ju));
  }
  doc["units"] = std::move(units);
  doc["load"] = inst.load;
  doc["reserve"] = inst.reserve;
  if (inst.loop_defaults.standard || inst.loop_defaults.warm_start) {
    json n_it = json::object();
    if (inst.loop_defaults.standard) n_it["standard"] = *inst.loop_defaults.standard;
    if (inst.loop_defaults.warm_start) n_it["warm_start"] = *inst.loop_defaults.warm_start;
    doc["n_it"] = std::move(n_it);
  }
  return doc.dump(2);
}

Schedule make_schedule(const Instance& inst) { return Schedule(inst.unit_count(), inst.horizon(), 0); }

Dispatch make_dispatch(const Instance& inst) { return Dispatch(inst.unit_count(), inst.horizon(), 0.0); }

Schedule schedule_from_columns(const std::vector<std::string>& columns) {
  if (columns.empty()) throw DimensionError("schedule needs at least one time step");
  const std::size_t n = columns.front().size();
  Schedule y(n, columns.size(), 0);
  for (std::size_t t = 0; t < columns.size(); ++t) {
    if (columns[t].size() != n) {
      throw DimensionError("schedule column " + std::to_string(t + 1) + " has " +
                           std::to_string(columns[t].size()) + " units, expected " +
                           std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      char ch = columns[t][i];
      if (ch != '0' && ch != '1') {
        throw ParseError("schedule[" + std::to_string(t) + "]", "bitstrings may only contain 0/1");
      }
      y(i, t) = ch == '1' ? 1 : 0;
    }
  }
  return y;
}

std::string column_bits(const Schedule& y, std::size_t t) {
  std::string s(y.units(), '0');
  for (std::size_t i = 0; i < y.units(); ++i) s[i] = y(i, t) ? '1' : '0';
  return s;
}

std::vector<std::string> schedule_columns(const Schedule& y) {
  std::vector<std::string> out;
  out.reserve(y.steps());
  for (std::size_t t = 0; t < y.steps(); ++t) out.push_back(column_bits(y, t));
  return out;
}

void check_shape(const Instance& inst, const Schedule& y) {
  if (!y.same_shape(inst.unit_count(), inst.horizon())) {
    throw DimensionError("schedule is " + std::to_string(y.units()) + "x" +
                         std::to_string(y.steps()) + ", instance needs " +
                         std::to_string(inst.unit_count()) + "x" +
                         std::to_string(inst.horizon()));
  }
}

void check_shape(const Instance& inst, const Schedule& y, const Dispatch& p) {
  check_shape(inst, y);
  if (!p.same_shape(inst.unit_count(), inst.horizon())) {
    throw DimensionError("dispatch is " + std::to_string(p.units()) + "x" +
                         std::to_string(p.steps()) + ", instance needs " +
                         std::to_string(inst.unit_count()) + "x" +
                         std::to_string(inst.horizon()));
  }
}

HistoryState compute_history(const Instance& inst, const Schedule& y) {
  check_shape(inst, y);
  const std::size_t n = inst.unit_count(), horizon = inst.horizon();
  HistoryState h{Grid<int>(n, horizon, 0), Grid<int>(n, horizon, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    const InitialCondition& ic = inst.initial[i];
    int on_prev = ic.initially_on ? ic.steps_in_state : 0;
    int off_prev = ic.initially_on ? 0 : ic.steps_in_state;
    for (std::size_t t = 0; t < horizon; ++t) {
      if (y(i, t)) {
        h.t_on(i, t) = 1 + on_prev;
        h.t_off(i, t) = 0;
      } else {
        h.t_off(i, t) = 1 + off_prev;
        h.t_on(i, t) = 0;
      }
      on_prev = h.t_on(i, t);
      off_prev = h.t_off(i, t);
    }
  }
  return h;
}

bool committed_before(const Instance& inst, const Schedule& y, std::size_t i, std::size_t t) {
  return t == 0 ? inst.initial[i].initially_on : y(i, t - 1) != 0;
}

double power_before(const Instance& inst, const Schedule& y, const Dispatch& p, std::size_t i,
                    std::size_t t) {
  if (t == 0) return inst.initial[i].initially_on ? inst.initial[i].initial_power : 0.0;
  return y(i, t - 1) ? p(i, t - 1) : 0.0;
}

std::pair<double, double> operating_range(const Instance& inst, const Schedule& y,
                                          const Dispatch& p, std::size_t i, std::size_t t) {
  check_shape(inst, y, p);
  if (i >= inst.unit_count() || t >= inst.horizon()) {
    throw DimensionError("operating_range index out of range");
  }
  const UnitSpec& u = inst.units[i];
  if (y(i, t) && committed_before(inst, y, i, t)) {
    const double prev = power_before(inst, y, p, i, t);
    return {std::max(u.p_min, prev - u.ramp_down), std::min(u.p_max, prev + u.ramp_up)};
  }
  return {u.p_min, u.p_max};
}

}  // namespace uc
