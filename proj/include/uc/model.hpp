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

// Domain types for unit commitment instances, schedules and dispatches.
//
// Time indices are 0-based everywhere in the library. Documents and reports
// present them 1-based.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uc/grid.hpp"

namespace uc {

/// Static parameters of one generating unit. Powers in MW, durations in steps.
struct UnitSpec {
  double p_min = 0.0;
  double p_max = 0.0;
  double a = 0.0;  // fixed cost per committed step
  double b = 0.0;  // linear cost per MW
  double c = 0.0;  // quadratic cost per MW^2
  double hot_start_cost = 0.0;
  double cold_start_cost = 0.0;
  int cold_start_time = 0;
  int t_down_min = 0;
  int t_up_min = 0;
  double ramp_down = 0.0;
  double ramp_up = 0.0;

  friend bool operator==(const UnitSpec&, const UnitSpec&) = default;
};

/// State of a unit before the first step of the horizon.
struct InitialCondition {
  bool initially_on = false;
  int steps_in_state = 1;
  double initial_power = 0.0;

  friend bool operator==(const InitialCondition&, const InitialCondition&) = default;
};

/// Default pre-horizon state: off long enough that the first start is cold
/// and no minimum-downtime block applies at the first step.
InitialCondition default_initial_condition(const UnitSpec& unit);

/// Iteration counts of the refinement loop recorded alongside an instance.
struct LoopDefaults {
  std::optional<int> standard;
  std::optional<int> warm_start;

  friend bool operator==(const LoopDefaults&, const LoopDefaults&) = default;
};

struct Instance {
  std::string name;
  std::vector<UnitSpec> units;
  std::vector<double> load;
  std::vector<double> reserve;
  std::vector<InitialCondition> initial;
  LoopDefaults loop_defaults;

  std::size_t unit_count() const noexcept { return units.size(); }
  std::size_t horizon() const noexcept { return load.size(); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Commitment matrix y(i, t) in {0, 1}.
using Schedule = Grid<std::uint8_t>;
/// Power matrix p(i, t) in MW.
using Dispatch = Grid<double>;

/// Continuous on/off durations up to and including each step.
struct HistoryState {
  Grid<int> t_on;
  Grid<int> t_off;
};

/// Checks every invariant of a parsed or hand-built instance. Throws
/// ValidationError, or InfeasibleInstanceError when capacity cannot cover
/// load plus reserve at some step.
void validate(const Instance& instance);

/// Parses the JSON instance document and validates it.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);
std::string serialize_instance(const Instance& instance);

Schedule make_schedule(const Instance& instance);
Dispatch make_dispatch(const Instance& instance);

/// Builds a schedule from per-step bitstrings where character i is unit i.
Schedule schedule_from_columns(const std::vector<std::string>& columns);
std::string column_bits(const Schedule& schedule, std::size_t t);
std::vector<std::string> schedule_columns(const Schedule& schedule);

/// Continuous on/off time counters for every (unit, step).
HistoryState compute_history(const Instance& instance, const Schedule& schedule);

/// Commitment of unit i just before step t (the initial state when t == 0).
bool committed_before(const Instance& instance, const Schedule& schedule, std::size_t i,
                      std::size_t t);

/// Power of unit i just before step t; 0 when the unit was off.
double power_before(const Instance& instance, const Schedule& schedule,
                    const Dispatch& dispatch, std::size_t i, std::size_t t);

/// Ramp-tightened operating range of unit i at step t. Falls back to the
/// absolute range unless the unit is on at both t-1 and t.
std::pair<double, double> operating_range(const Instance& instance, const Schedule& schedule,
                                          const Dispatch& dispatch, std::size_t i,
                                          std::size_t t);

void check_shape(const Instance& instance, const Schedule& schedule);
void check_shape(const Instance& instance, const Schedule& schedule, const Dispatch& dispatch);

}  // namespace uc
