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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "uc/cli.hpp"

using json = nlohmann::json;
using uc::testing::fixture_path;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = uc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string instance_file(const std::string& name) {
  return fixture_path("instances/" + name + ".json").string();
}

std::string solution_file(const std::string& name, const std::string& kind) {
  return fixture_path("solutions/" + name + "_" + kind + ".json").string();
}

// Scratch file removed when the test ends.
struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& content = "")
      : path(std::filesystem::temp_directory_path() / name) {
    if (!content.empty()) std::ofstream(path) << content;
  }
  ~TempFile() { std::filesystem::remove(path); }
  std::string read() const {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("missing instance file is an input error") {
    const Outcome r = invoke({"run", "missing.json"});
    CHECK(r.code == uc::cli::kInputError);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
  }

  TEST_CASE("unknown flags and bad values are input errors") {
    CHECK(invoke({"run", instance_file("uc_4a"), "--bogus"}).code == uc::cli::kInputError);
    CHECK(invoke({"run", instance_file("uc_4a"), "--mode", "sideways"}).code ==
          uc::cli::kInputError);
    CHECK(invoke({"run", instance_file("uc_4a"), "--layers", "0"}).code == uc::cli::kInputError);
    CHECK(invoke({"reference", instance_file("uc_4a"), "--method", "greedy"}).code ==
          uc::cli::kInputError);
    CHECK(invoke({"frobnicate"}).code == uc::cli::kInputError);
    CHECK(invoke({}).code == uc::cli::kInputError);
  }

  TEST_CASE("help exits cleanly") {
    const Outcome r = invoke({"--help"});
    CHECK(r.code == uc::cli::kSuccess);
    CHECK(r.out.find("evaluate") != std::string::npos);
  }

  TEST_CASE("evaluating the standard UC_10b table") {
    const Outcome r = invoke({"evaluate", instance_file("uc_10b"), solution_file("uc_10b", "standard")});
    REQUIRE(r.code == uc::cli::kSuccess);
    const json doc = json::parse(r.out);
    CHECK(doc["method"] == "evaluate");
    CHECK(doc["feasibility"]["feasible"] == true);
    const double total = doc["cost"]["total"];
    CHECK(std::abs(total - 80166.6) / 80166.6 <= 0.005);
  }

  TEST_CASE("evaluating the warm-start UC_12a table") {
    const Outcome r =
        invoke({"evaluate", instance_file("uc_12a"), solution_file("uc_12a", "warm_start")});
    const json doc = json::parse(r.out);
    const double total = doc["cost"]["total"];
    CHECK(std::abs(total - 89277.7) / 89277.7 <= 0.005);
    CHECK(r.code == (doc["feasibility"]["feasible"] ? uc::cli::kSuccess : uc::cli::kInfeasible));
  }

  TEST_CASE("an all-off solution is reported infeasible") {
    const TempFile sol("uc_cli_all_off.json",
                       R"({"schedule": ["0000","0000","0000"],
                           "dispatch": [[0,0,0,0],[0,0,0,0],[0,0,0,0]]})");
    const Outcome r = invoke({"evaluate", instance_file("uc_4a"), sol.path.string()});
    CHECK(r.code == uc::cli::kInfeasible);
    const json doc = json::parse(r.out);
    CHECK(doc["feasibility"]["feasible"] == false);
    CHECK(doc["feasibility"]["load_residual"][0] == -350.0);
    CHECK(doc["cost"]["total"] == 0.0);
  }

  TEST_CASE("solutions of the wrong shape are input errors") {
    CHECK(invoke({"evaluate", instance_file("uc_4a"), solution_file("uc_10a", "standard")}).code ==
          uc::cli::kInputError);
    const TempFile bad("uc_cli_bad.json", "{\"schedule\": 3}");
    CHECK(invoke({"evaluate", instance_file("uc_4a"), bad.path.string()}).code ==
          uc::cli::kInputError);
  }

  TEST_CASE("report can go to a file") {
    const TempFile dest("uc_cli_report.json");
    const Outcome r = invoke({"evaluate", instance_file("uc_10b"), solution_file("uc_10b", "standard"),
                              "--out", dest.path.string()});
    CHECK(r.code == uc::cli::kSuccess);
    CHECK(r.out.empty());
    const json doc = json::parse(dest.read());
    CHECK(doc["instance"] == "UC_10b");
    CHECK(doc.contains("relative_error"));
  }

  TEST_CASE("compare with no seeds prints only the header") {
    const Outcome r = invoke({"compare", instance_file("uc_4a"), "--seeds", "0"});
    CHECK(r.code == uc::cli::kSuccess);
    CHECK(lines(r.out) == std::vector<std::string>{
                              "instance,mode,seed,cost,feasible,convergence_iteration,"
                              "gap_to_reference,error"});
  }

  TEST_CASE("compare writes a reference row, one row per seed and a modal row") {
    const Outcome r = invoke({"compare", instance_file("uc_4a"), "--seeds", "1", "--shots", "256",
                              "--n-it", "1"});
    CHECK(r.code == uc::cli::kSuccess);
    const std::vector<std::string> rows = lines(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[1].rfind("UC_4a,reference-exact,,", 0) == 0);
    CHECK(rows[2].rfind("UC_4a,standard,0,", 0) == 0);
    CHECK(rows[3].rfind("UC_4a,standard-modal,,", 0) == 0);
    CHECK(rows[4].rfind("UC_4a,warm-start,0,", 0) == 0);
    CHECK(rows[5].rfind("UC_4a,warm-start-modal,,", 0) == 0);
  }

  TEST_CASE("standard UC_4b run without refinement settles at once") {
    const TempFile trace("uc_cli_trace.jsonl");
    const TempFile dump("uc_cli_qubo.jsonl");
    const Outcome r = invoke({"run", instance_file("uc_4b"), "--mode", "standard", "--n-it", "0",
                              "--shots", "512", "--trace", trace.path.string(), "--dump-qubo",
                              dump.path.string()});
    REQUIRE((r.code == uc::cli::kSuccess || r.code == uc::cli::kInfeasible));
    const json doc = json::parse(r.out);
    CHECK(doc["method"] == "hybrid");
    CHECK(doc["mode"] == "standard");
    CHECK(doc["n_it"] == 0);
    CHECK(doc["convergence_iteration"] == 0);
    CHECK(doc["trace"].size() == 1);
    CHECK(lines(trace.read()).size() == 1);
    const std::vector<std::string> qubos = lines(dump.read());
    REQUIRE(qubos.size() == 3);
    CHECK(json::parse(qubos[2])["t"] == 3);
  }

  TEST_CASE("QAOA evaluation trace is a CSV") {
    const TempFile tq("uc_cli_qaoa.csv");
    const Outcome r = invoke({"run", instance_file("uc_4a"), "--n-it", "0", "--shots", "128",
                              "--layers", "2", "--trace-qaoa", tq.path.string()});
    CHECK(r.code != uc::cli::kInputError);
    const std::vector<std::string> rows = lines(tq.read());
    REQUIRE(rows.size() > 1);
    CHECK(rows[0] == "sweep,t,evaluation,gamma_1,gamma_2,beta_1,beta_2,expectation");
    CHECK(rows[1].rfind("0,1,", 0) == 0);
  }

  TEST_CASE("reference subcommand") {
    const Outcome r = invoke({"reference", instance_file("uc_4a"), "--method", "exact"});
    CHECK(r.code == uc::cli::kSuccess);
    const json doc = json::parse(r.out);
    CHECK(doc["method"] == "exact");
    CHECK(doc["schedule"] == json({"0101", "0101", "0111"}));
    CHECK(invoke({"reference", instance_file("uc_10a"), "--method", "exact"}).code ==
          uc::cli::kInputError);
  }
}
