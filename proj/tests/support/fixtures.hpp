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

#pragma once

#include <filesystem>
#include <string>

#include "uc/model.hpp"
#include "uc/report.hpp"

namespace uc::testing {

inline std::filesystem::path fixture_path(const std::string& relative) {
  return std::filesystem::path(UC_FIXTURE_DIR) / relative;
}

/// "uc_4a" etc.
inline Instance instance(const std::string& name) {
  return load_instance(fixture_path("instances/" + name + ".json"));
}

/// kind is "reference", "standard" or "warm_start".
inline SolutionFile published(const Instance& inst, const std::string& name,
                              const std::string& kind) {
  return load_solution(fixture_path("solutions/" + name + "_" + kind + ".json"), inst);
}

inline Dispatch at_capacity(const Instance& inst) {
  Dispatch p = make_dispatch(inst);
  for (std::size_t i = 0; i < inst.unit_count(); ++i) {
    for (std::size_t t = 0; t < inst.horizon(); ++t) p(i, t) = inst.units[i].p_max;
  }
  return p;
}

}  // namespace uc::testing
