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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "uc/cost.hpp"
#include "uc/error.hpp"

using uc::testing::instance;
using uc::testing::published;

namespace {

uc::Schedule from_columns(const std::vector<std::string>& cols) {
  return uc::schedule_from_columns(cols);
}

}  // namespace

TEST_SUITE("cost") {
  TEST_CASE("fuel cost is the quadratic polynomial") {
    const uc::Instance inst = instance("uc_4a");
    CHECK(uc::fuel_cost(inst.units[1], 100) == doctest::Approx(2120));
    CHECK(uc::fuel_cost(inst.units[3], 250) == doctest::Approx(6380.0).epsilon(1e-12));
    for (const uc::UnitSpec& u : inst.units) CHECK(uc::fuel_cost(u, 0) == u.a);
  }

  TEST_CASE("start-up cost switches from hot to cold past the cold-start time") {
    const uc::UnitSpec u = instance("uc_4a").units[2];  // d=12, e=13, T_down=1, f=2
    CHECK(uc::startup_cost(u, 1) == 12);
    CHECK(uc::startup_cost(u, 3) == 12);
    CHECK(uc::startup_cost(u, 4) == 13);
    CHECK(uc::startup_cost(u, 40) == 13);

    uc::UnitSpec same = u;
    same.cold_start_cost = same.hot_start_cost;
    for (int off = 1; off < 10; ++off) CHECK(uc::startup_cost(same, off) == 12);
  }

  TEST_CASE("all-off schedule costs nothing") {
    const uc::Instance inst = instance("uc_10a");
    const uc::CostBreakdown c =
        uc::production_cost(inst, uc::make_schedule(inst), uc::make_dispatch(inst));
    CHECK(c.total == 0.0);
    CHECK(c.fuel == 0.0);
    CHECK(c.startup == 0.0);
    CHECK(c.per_time == std::vector<double>(inst.horizon(), 0.0));
  }

  TEST_CASE("published optimal 4-unit tables reproduce their totals") {
    struct Case {
      const char* name;
      double total;
    };
    for (const Case& k : {Case{"uc_4a", 28282.1}, Case{"uc_4b", 31988.52}}) {
      CAPTURE(k.name);
      const uc::Instance inst = instance(k.name);
      const uc::SolutionFile s = published(inst, k.name, "reference");
      const uc::CostBreakdown c = uc::production_cost(inst, s.schedule, s.dispatch);
      CHECK(std::abs(c.total - k.total) / k.total <= 0.005);
    }
    const uc::Instance inst = instance("uc_4a");
    CHECK(published(inst, "uc_4a", "reference").schedule ==
          from_columns({"0101", "0101", "0111"}));
  }

  TEST_CASE("cold starts are charged on the first committed step") {
    const uc::Instance inst = instance("uc_4a");
    const uc::Schedule y = from_columns({"0101", "0101", "0111"});
    uc::Dispatch p = uc::make_dispatch(inst);
    const uc::CostBreakdown c = uc::production_cost(inst, y, p);
    // Units 2 and 4 start cold at t=1, unit 3 starts cold at t=3.
    CHECK(c.startup == doctest::Approx(18 + 14 + 13));
    // Zero dispatch leaves only the fixed terms of committed units.
    CHECK(c.fuel == doctest::Approx(2 * (450 + 370) + (450 + 735 + 370)));
  }

  TEST_CASE("hot restart after a short outage") {
    const uc::Instance inst = instance("uc_4a");
    const uc::Schedule y = from_columns({"0010", "0000", "0010"});
    const uc::CostBreakdown c = uc::production_cost(inst, y, uc::make_dispatch(inst));
    CHECK(c.startup == doctest::Approx(13 + 12));
  }

  TEST_CASE("totals are consistent across the breakdown") {
    const uc::Instance inst = instance("uc_12a");
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
      uc::Schedule y = uc::make_schedule(inst);
      uc::Dispatch p = uc::make_dispatch(inst);
      for (std::size_t i = 0; i < inst.unit_count(); ++i) {
        for (std::size_t t = 0; t < inst.horizon(); ++t) {
          y(i, t) = static_cast<std::uint8_t>(rng() & 1U);
          p(i, t) = inst.units[i].p_max * unit(rng);
        }
      }
      const uc::CostBreakdown c = uc::production_cost(inst, y, p);
      const double sum = std::accumulate(c.per_time.begin(), c.per_time.end(), 0.0);
      CHECK(c.total == doctest::Approx(c.fuel + c.startup).epsilon(1e-9));
      CHECK(c.total == doctest::Approx(sum).epsilon(1e-9));
    }
  }

  TEST_CASE("power of an off unit is not charged") {
    const uc::Instance inst = instance("uc_4a");
    const uc::Schedule y = from_columns({"0001", "0001", "0001"});
    uc::Dispatch p = uc::make_dispatch(inst);
    for (std::size_t t = 0; t < 3; ++t) p(3, t) = 300;
    const double base = uc::production_cost(inst, y, p).total;
    p(0, 1) = 40;
    CHECK(uc::production_cost(inst, y, p).total == base);
  }

  TEST_CASE("cost is invariant under a unit permutation") {
    const uc::Instance inst = instance("uc_10b");
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::size_t> perm(inst.unit_count());
    std::iota(perm.begin(), perm.end(), 0);
    for (int rep = 0; rep < 20; ++rep) {
      std::shuffle(perm.begin(), perm.end(), rng);
      uc::Schedule y = uc::make_schedule(inst);
      uc::Dispatch p = uc::make_dispatch(inst);
      for (std::size_t i = 0; i < inst.unit_count(); ++i) {
        for (std::size_t t = 0; t < inst.horizon(); ++t) {
          y(i, t) = static_cast<std::uint8_t>(rng() & 1U);
          p(i, t) = inst.units[i].p_max * unit(rng);
        }
      }
      uc::Instance shuffled = inst;
      uc::Schedule ys = y;
      uc::Dispatch ps = p;
      for (std::size_t k = 0; k < perm.size(); ++k) {
        shuffled.units[k] = inst.units[perm[k]];
        shuffled.initial[k] = inst.initial[perm[k]];
        for (std::size_t t = 0; t < inst.horizon(); ++t) {
          ys(k, t) = y(perm[k], t);
          ps(k, t) = p(perm[k], t);
        }
      }
      CHECK(uc::production_cost(shuffled, ys, ps).total ==
            doctest::Approx(uc::production_cost(inst, y, p).total).epsilon(1e-12));
    }
  }

  TEST_CASE("cost is convex in dispatch for a fixed schedule") {
    const uc::Instance inst = instance("uc_12b");
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
      uc::Schedule y = uc::make_schedule(inst);
      uc::Dispatch a = uc::make_dispatch(inst);
      uc::Dispatch b = a;
      uc::Dispatch mid = a;
      for (std::size_t i = 0; i < inst.unit_count(); ++i) {
        for (std::size_t t = 0; t < inst.horizon(); ++t) {
          y(i, t) = static_cast<std::uint8_t>(rng() & 1U);
          a(i, t) = inst.units[i].p_max * unit(rng);
          b(i, t) = inst.units[i].p_max * unit(rng);
          mid(i, t) = 0.5 * (a(i, t) + b(i, t));
        }
      }
      const double ca = uc::production_cost(inst, y, a).total;
      const double cb = uc::production_cost(inst, y, b).total;
      const double cm = uc::production_cost(inst, y, mid).total;
      CHECK(cm <= 0.5 * (ca + cb) + 1e-9 * std::abs(ca + cb));
    }
  }

  TEST_CASE("production cost rejects mismatched shapes") {
    const uc::Instance inst = instance("uc_4a");
    CHECK_THROWS_AS(uc::production_cost(inst, uc::Schedule(4, 2), uc::make_dispatch(inst)),
                    uc::DimensionError);
    CHECK_THROWS_AS(uc::production_cost(inst, uc::make_schedule(inst), uc::Dispatch(5, 3)),
                    uc::DimensionError);
  }

  TEST_CASE("audit reports a load shortfall") {
    const uc::Instance inst = instance("uc_4a");
    const uc::Schedule y = from_columns({"0001", "0001", "0001"});
    uc::Dispatch p = uc::make_dispatch(inst);
    p(3, 0) = 200;
    p(3, 1) = 290;
    p(3, 2) = 380;
    const uc::FeasibilityReport r = uc::audit(inst, y, p);
    CHECK(r.load_residual[0] == doctest::Approx(-150));
    CHECK_FALSE(r.feasible);
  }

  TEST_CASE("audit reports the reserve deficit of a lone small unit") {
    const uc::Instance inst = instance("uc_4a");
    const uc::Schedule y = from_columns({"1000", "0001", "0001"});
    const uc::FeasibilityReport r = uc::audit(inst, y, uc::make_dispatch(inst));
    CHECK(r.reserve_deficit[0] == doctest::Approx(315));
    CHECK(r.reserve_deficit[1] == 0.0);
    CHECK_FALSE(r.feasible);
  }

  TEST_CASE("audit accepts the published standard 10b table") {
    const uc::Instance inst = instance("uc_10b");
    const uc::SolutionFile s = published(inst, "uc_10b", "standard");
    const uc::FeasibilityReport r = uc::audit(inst, s.schedule, s.dispatch);
    CHECK(r.feasible);
    CHECK(r.range_violations.empty());
    CHECK(r.min_up_violations.empty());
    CHECK(r.min_down_violations.empty());
  }

  TEST_CASE("audit flags minimum up and down time") {
    const uc::Instance inst = instance("uc_4a");
    // Unit 3 has T_up = 2 and is switched off after one step.
    const uc::FeasibilityReport up =
        uc::audit(inst, from_columns({"0011", "0001", "0001"}), uc::testing::at_capacity(inst));
    CHECK(up.min_up_violations == std::vector<uc::UnitStep>{{2, 1}});

    // Unit 1 has T_down = 4 and restarts after one off step.
    const uc::FeasibilityReport down =
        uc::audit(inst, from_columns({"1001", "0001", "1001"}), uc::testing::at_capacity(inst));
    CHECK(down.min_down_violations == std::vector<uc::UnitStep>{{0, 2}});
  }

  TEST_CASE("audit flags ramp violations with their size") {
    const uc::Instance inst = instance("uc_4a");
    const uc::Schedule y = from_columns({"0001", "0001", "0001"});
    uc::Dispatch p = uc::make_dispatch(inst);
    p(3, 0) = 350;
    p(3, 1) = 300;
    p(3, 2) = 500;  // +200 against a ramp-up of 90
    const uc::FeasibilityReport r = uc::audit(inst, y, p);
    REQUIRE(r.range_violations.size() == 1);
    CHECK(r.range_violations[0].unit == 3);
    CHECK(r.range_violations[0].step == 2);
    CHECK(r.range_violations[0].amount == doctest::Approx(110));
  }

  TEST_CASE("feasible means every list is empty and residuals are in tolerance") {
    const uc::Instance inst = instance("uc_4b");
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 300; ++rep) {
      uc::Schedule y = uc::make_schedule(inst);
      uc::Dispatch p = uc::make_dispatch(inst);
      for (std::size_t i = 0; i < inst.unit_count(); ++i) {
        for (std::size_t t = 0; t < inst.horizon(); ++t) {
          y(i, t) = static_cast<std::uint8_t>(rng() & 1U);
          p(i, t) = inst.units[i].p_max * unit(rng);
        }
      }
      const uc::FeasibilityReport r = uc::audit(inst, y, p);
      bool ok = r.range_violations.empty() && r.min_up_violations.empty() &&
                r.min_down_violations.empty();
      for (double v : r.load_residual) ok = ok && std::abs(v) <= 1.0;
      for (double v : r.reserve_deficit) ok = ok && v <= 0.0;
      CHECK(r.feasible == ok);
    }
  }
}
