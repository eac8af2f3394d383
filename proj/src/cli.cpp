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

#include "uc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "uc/cost.hpp"
#include "uc/error.hpp"
#include "uc/hybrid.hpp"
#include "uc/model.hpp"
#include "uc/reference.hpp"
#include "uc/report.hpp"

namespace uc::cli {
namespace {

struct RunOptions {
  std::string instance;
  std::string mode = "standard";
  std::uint64_t seed = 0;
  std::size_t shots = 4096;
  std::size_t layers = 1;
  std::optional<std::size_t> n_it;
  double lambda_loop = 0.5;
  double lambda_final = 1e4;
  std::size_t restarts = 1;
  std::string trace_path;
  std::string trace_qaoa_path;
  std::string dump_qubo_path;
  std::string out_path;
};

std::unique_ptr<std::ofstream> open_output(const std::string& path) {
  if (path.empty()) return nullptr;
  auto f = std::make_unique<std::ofstream>(path);
  if (!*f) throw ParseError(path, "cannot open output file");
  return f;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  const char* end = !text.empty() && text.back() == '\n' ? "" : "\n";
  if (out_path.empty()) {
    out << text << end;
    return;
  }
  auto f = open_output(out_path);
  *f << text << end;
}

HybridConfig make_config(const Instance& inst, const RunOptions& o, QaoaMode mode) {
  HybridConfig cfg;
  cfg.n_it = o.n_it ? *o.n_it : default_iterations(inst, mode);
  cfg.lambda_loop = o.lambda_loop;
  cfg.lambda_final = o.lambda_final;
  cfg.seed = o.seed;
  cfg.qaoa.mode = mode;
  cfg.qaoa.shots = o.shots;
  cfg.qaoa.layers = o.layers;
  cfg.qaoa.restarts = o.restarts;
  return cfg;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(10) << v;
  return ss.str();
}

int cmd_run(const RunOptions& o, std::ostream& out) {
  const Instance inst = load_instance(o.instance);
  const QaoaMode mode = parse_qaoa_mode(o.mode);
  HybridConfig cfg = make_config(inst, o, mode);

  auto trace = open_output(o.trace_path);
  auto trace_qaoa = open_output(o.trace_qaoa_path);
  auto dump = open_output(o.dump_qubo_path);
  if (trace) {
    cfg.on_iteration = [&](const HybridTraceEntry& e) { *trace << trace_line(e) << "\n"; };
  }
  if (dump) {
    cfg.on_qubo = [&](std::size_t sweep, std::size_t t, const QuboProblem& q) {
      *dump << qubo_to_json(q, sweep, t) << "\n";
    };
  }
  std::size_t cur_sweep = 0, cur_t = 0;
  if (trace_qaoa) {
    *trace_qaoa << "sweep,t,evaluation";
    for (std::size_t l = 1; l <= o.layers; ++l) *trace_qaoa << ",gamma_" << l;
    for (std::size_t l = 1; l <= o.layers; ++l) *trace_qaoa << ",beta_" << l;
    *trace_qaoa << ",expectation\n";
    cfg.on_qaoa_start = [&](std::size_t sweep, std::size_t t) {
      cur_sweep = sweep;
      cur_t = t;
    };
    cfg.qaoa.trace = [&](std::size_t k, std::span<const double> g, std::span<const double> b,
                         double e) {
      *trace_qaoa << cur_sweep << "," << cur_t + 1 << "," << k;
      for (double v : g) *trace_qaoa << "," << fmt(v);
      for (double v : b) *trace_qaoa << "," << fmt(v);
      *trace_qaoa << "," << fmt(e) << "\n";
    };
  }

  const HybridSolution sol = solve(inst, cfg);
  ReportInfo info;
  info.method = "hybrid";
  info.mode = to_string(mode);
  info.seed = o.seed;
  info.n_it = cfg.n_it;
  emit(solution_report(inst, sol, info), o.out_path, out);
  return sol.audit.feasible ? kSuccess : kInfeasible;
}

int cmd_evaluate(const std::string& instance_path, const std::string& solution_path,
                 const std::string& out_path, std::ostream& out) {
  const Instance inst = load_instance(instance_path);
  const SolutionFile file = load_solution(solution_path, inst);
  HybridSolution s;
  s.schedule = file.schedule;
  s.dispatch = file.dispatch;
  s.cost = production_cost(inst, s.schedule, s.dispatch);
  s.audit = audit(inst, s.schedule, s.dispatch);
  ReportInfo info;
  info.method = "evaluate";
  info.reported_cost = file.reported_cost;
  emit(solution_report(inst, s, info), out_path, out);
  return s.audit.feasible ? kSuccess : kInfeasible;
}

HybridSolution run_reference(const Instance& inst, const std::string& method) {
  if (method == "exact") return solve_exact(inst);
  if (method == "dp") return solve_dp(inst);
  throw ValidationError("unknown reference method '" + method + "' (expected exact or dp)");
}

int cmd_reference(const std::string& instance_path, const std::string& method,
                  const std::string& out_path, std::ostream& out) {
  const Instance inst = load_instance(instance_path);
  const HybridSolution s = run_reference(inst, method);
  ReportInfo info;
  info.method = method;
  emit(solution_report(inst, s, info), out_path, out);
  return s.audit.feasible ? kSuccess : kInfeasible;
}

int cmd_compare(const RunOptions& o, std::size_t seeds, const std::string& method,
                std::ostream& out) {
  const Instance inst = load_instance(o.instance);
  std::ostringstream csv;
  csv << "instance,mode,seed,cost,feasible,convergence_iteration,gap_to_reference,error\n";
  if (seeds > 0) {
    std::optional<double> ref_cost;
    {
      std::string row_method = method;
      if (row_method.empty()) {
        row_method = inst.unit_count() * inst.horizon() <= ReferenceLimits{}.max_bits ? "exact" : "dp";
      }
      csv << csv_field(inst.name) << ",reference-" << row_method << ",,";
      try {
        const HybridSolution r = run_reference(inst, row_method);
        ref_cost = r.cost.total;
        csv << fmt(r.cost.total) << "," << (r.audit.feasible ? "true" : "false") << ",,0,\n";
      } catch (const std::exception& e) {
        csv << ",,,," << csv_field(e.what()) << "\n";
      }
    }
    for (QaoaMode mode : {QaoaMode::standard, QaoaMode::warm_start}) {
      std::vector<double> costs;
      std::vector<double> iterations;
      for (std::size_t k = 0; k < seeds; ++k) {
        RunOptions ro = o;
        ro.seed = o.seed + k;
        csv << csv_field(inst.name) << "," << to_string(mode) << "," << ro.seed << ",";
        try {
          const HybridSolution s = solve(inst, make_config(inst, ro, mode));
          costs.push_back(s.cost.total);
          csv << fmt(s.cost.total) << "," << (s.audit.feasible ? "true" : "false") << ",";
          if (s.convergence_iteration) {
            csv << *s.convergence_iteration;
            iterations.push_back(static_cast<double>(*s.convergence_iteration));
          }
          csv << ",";
          if (ref_cost) csv << fmt((s.cost.total - *ref_cost) / *ref_cost);
          csv << ",\n";
        } catch (const std::exception& e) {
          csv << ",,,," << csv_field(e.what()) << "\n";
        }
      }
      csv << csv_field(inst.name) << "," << to_string(mode) << "-modal,,";
      const std::optional<double> modal = modal_value(costs, 0.1);
      if (modal) csv << fmt(*modal);
      csv << ",,";
      if (const std::optional<double> it = modal_value(iterations, 1.0)) csv << *it;
      csv << ",";
      if (modal && ref_cost) csv << fmt((*modal - *ref_cost) / *ref_cost);
      csv << ",\n";
    }
  }
  emit(csv.str(), o.out_path, out);
  return kSuccess;
}

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--mode", o.mode, "standard or warm-start")
      ->check(CLI::IsMember({"standard", "warm-start", "warm_start"}));
  cmd->add_option("--seed", o.seed, "run seed");
  cmd->add_option("--shots", o.shots, "readout shots per QAOA call");
  cmd->add_option("--layers", o.layers, "QAOA layers p")->check(CLI::PositiveNumber);
  cmd->add_option("--n-it", o.n_it, "refinement iterations (default from the instance file)");
  cmd->add_option("--lambda-loop", o.lambda_loop, "penalty weight inside the loop");
  cmd->add_option("--lambda-final", o.lambda_final, "penalty weight of the final dispatch");
  cmd->add_option("--restarts", o.restarts, "random starts of the QAOA parameter search");
  cmd->add_option("--out", o.out_path, "write the report here instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid QAOA / classical unit commitment solver", "uc-hybrid"};
  app.require_subcommand(1);

  RunOptions run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "solve an instance with the hybrid loop");
  run_cmd->add_option("instance", run_opts.instance, "instance JSON")->required();
  add_run_options(run_cmd, run_opts);
  run_cmd->add_option("--trace", run_opts.trace_path, "JSON-lines iteration trace");
  run_cmd->add_option("--trace-qaoa", run_opts.trace_qaoa_path, "CSV of every QAOA evaluation");
  run_cmd->add_option("--dump-qubo", run_opts.dump_qubo_path, "JSON-lines dump of every QUBO");

  std::string eval_instance, eval_solution, eval_out;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "cost and audit of a given solution");
  eval_cmd->add_option("instance", eval_instance, "instance JSON")->required();
  eval_cmd->add_option("solution", eval_solution, "solution JSON")->required();
  eval_cmd->add_option("--out", eval_out, "write the report here instead of stdout");

  RunOptions cmp_opts;
  std::size_t seeds = 10;
  std::string cmp_method;
  CLI::App* cmp_cmd = app.add_subcommand("compare", "CSV of both modes over seeds plus reference");
  cmp_cmd->add_option("instance", cmp_opts.instance, "instance JSON")->required();
  cmp_cmd->add_option("--seeds", seeds, "number of seeds per mode");
  cmp_cmd->add_option("--method", cmp_method, "reference method (exact or dp)")
      ->check(CLI::IsMember({"exact", "dp"}));
  add_run_options(cmp_cmd, cmp_opts);

  std::string ref_instance, ref_method = "exact", ref_out;
  CLI::App* ref_cmd = app.add_subcommand("reference", "classical baseline");
  ref_cmd->add_option("instance", ref_instance, "instance JSON")->required();
  ref_cmd->add_option("--method", ref_method, "exact or dp")->check(CLI::IsMember({"exact", "dp"}));
  ref_cmd->add_option("--out", ref_out, "write the report here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*run_cmd) return cmd_run(run_opts, out);
    if (*eval_cmd) return cmd_evaluate(eval_instance, eval_solution, eval_out, out);
    if (*cmp_cmd) return cmd_compare(cmp_opts, seeds, cmp_method, out);
    if (*ref_cmd) return cmd_reference(ref_instance, ref_method, ref_out, out);
  } catch (const InfeasibleSolutionError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DimensionError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const QubitLimitError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const LimitError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace uc::cli
