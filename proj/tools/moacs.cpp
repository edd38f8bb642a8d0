// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

// moacs: solve, generate, benchmark and analyse VM consolidation runs.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "moacs/bench.hpp"
#include "moacs/errors.hpp"
#include "moacs/io.hpp"
#include "moacs/moacs.hpp"
#include "moacs/workload.hpp"

namespace fs = std::filesystem;
using namespace moacs;

namespace {

DemandRange parse_range(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw FormatError("range must be lo,hi: " + text);
  DemandRange r{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  r.validate();
  return r;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

struct SolveArgs {
  std::string problem;
  std::string algo = "moacs";
  std::uint64_t seed = 1;
  std::string config;
  std::string out;
  std::string metrics;
  bool parallel = false;
  double alpha = -1, beta = -1, rho = -1, q0 = -1;
  std::size_t ants = 0, generations = 0, max_rounds = 0, stale_rounds = 0;
};

int run_solve(const SolveArgs& a) {
  const auto problem = problem_from_json(read_json_file(a.problem));
  SolverOptions options;
  if (!a.config.empty()) {
    const Json cfg = read_json_file(a.config);
    params_from_json(cfg.value("params", cfg), options.params);
    if (cfg.contains("stopping")) stopping_from_json(cfg.at("stopping"), options.stopping);
  }
  // Explicit flags override the config file.
  if (a.alpha >= 0) options.params.alpha = a.alpha;
  if (a.beta >= 0) options.params.beta = a.beta;
  if (a.rho >= 0) options.params.rho = a.rho;
  if (a.q0 >= 0) options.params.q0 = a.q0;
  if (a.ants > 0) options.params.num_ants = a.ants;
  if (a.generations > 0) options.params.num_generations = a.generations;
  if (a.max_rounds > 0) options.stopping.max_rounds = a.max_rounds;
  if (a.stale_rounds > 0) options.stopping.no_improvement_rounds = a.stale_rounds;
  options.params.validate();
  options.execution = a.parallel ? ExecutionMode::parallel : ExecutionMode::sequential;

  const ConsolidationResult result = parse_algorithm(a.algo) == Algorithm::acs
                                         ? acs_baseline(problem, options, a.seed)
                                         : moacs_consolidate(problem, options, a.seed);
  emit(a.out, result_plan_json(result).dump(2) + "\n");
  const auto metrics = result_metrics_json(result).dump(2) + "\n";
  if (!a.metrics.empty()) {
    write_text_file(a.metrics, metrics);
  } else {
    std::cerr << metrics;
  }
  return 0;
}

int run_gen(int scenario, std::uint64_t seed, std::size_t vms, std::size_t pms,
            std::size_t hood, const std::string& cpu, const std::string& mem,
            const std::string& out) {
  ScenarioSpec spec = ScenarioSpec::standard(scenario);
  if (vms > 0) spec.num_vms = vms;
  if (pms > 0) spec.num_pms = pms;
  if (hood > 0) spec.neighborhood_size = hood;
  DemandRanges ranges;
  if (!cpu.empty()) {
    (spec.cpu == CpuLevel::low ? ranges.low_cpu : ranges.high_cpu) = parse_range(cpu);
  }
  if (!mem.empty()) {
    (spec.mem == MemLevel::small ? ranges.small_mem : ranges.large_mem) = parse_range(mem);
  }
  emit(out, problem_to_json(generate_scenario(spec, seed, ranges)).dump(2) + "\n");
  return 0;
}

int run_bench(const std::string& config_path, const std::string& out_dir, std::size_t workers) {
  ExperimentConfig config = experiment_config_from_json(read_json_file(config_path));
  if (workers > 0) config.workers = workers;
  const auto report = run_experiment(config);
  fs::create_directories(out_dir);
  {
    std::ofstream raw(fs::path(out_dir) / "raw.csv");
    write_raw_csv(raw, report.raw);
  }
  {
    std::ofstream csv(fs::path(out_dir) / "report.csv");
    write_report_csv(csv, report);
  }
  write_text_file(fs::path(out_dir) / "report.json", report_to_json(report, &config).dump(2) + "\n");
  write_report_csv(std::cout, report);
  if (report.any_failed()) {
    std::cerr << "some cells failed; see raw.csv\n";
    return 3;
  }
  return 0;
}

int run_stats(const std::string& raw_path, const std::string& out) {
  std::ifstream in(raw_path);
  if (!in) throw FormatError("cannot open " + raw_path);
  const auto report = summarize(read_raw_csv(in));
  if (out.empty()) {
    write_report_csv(std::cout, report);
  } else {
    write_text_file(out, report_to_json(report).dump(2) + "\n");
  }
  return report.any_failed() ? 3 : 0;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_steps(const std::vector<std::string>& raw) {
  std::vector<std::pair<std::size_t, std::size_t>> steps;
  for (const auto& s : raw) {
    const auto x = s.find('x');
    if (x == std::string::npos) throw FormatError("step must be PMSxVMS: " + s);
    steps.emplace_back(std::stoul(s.substr(0, x)), std::stoul(s.substr(x + 1)));
  }
  return steps;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-colony ant system for VM consolidation"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Consolidate one problem instance");
  solve->add_option("--problem", solve_args.problem, "Problem JSON")->required();
  solve->add_option("--algo", solve_args.algo, "moacs or acs")
      ->check(CLI::IsMember({"moacs", "acs"}));
  solve->add_option("--seed", solve_args.seed, "Master seed");
  solve->add_option("--config", solve_args.config, "JSON with params/stopping");
  solve->add_option("--alpha", solve_args.alpha, "Global decay");
  solve->add_option("--beta", solve_args.beta, "Heuristic weight");
  solve->add_option("--rho", solve_args.rho, "Local decay");
  solve->add_option("--q0", solve_args.q0, "Exploitation probability");
  solve->add_option("--ants", solve_args.ants, "Ants per generation");
  solve->add_option("--generations", solve_args.generations, "Generations per round");
  solve->add_option("--max-rounds", solve_args.max_rounds, "Round limit");
  solve->add_option("--stale-rounds", solve_args.stale_rounds,
                    "Stop after this many rounds without a release");
  solve->add_flag("--parallel", solve_args.parallel, "Threaded colonies (not reproducible)");
  solve->add_option("--out", solve_args.out, "Plan JSON (default stdout)");
  solve->add_option("--metrics", solve_args.metrics, "Metrics JSON (default stderr)");

  int scenario = 1;
  std::uint64_t gen_seed = 1;
  std::size_t gen_vms = 0, gen_pms = 0, gen_hood = 0;
  std::string cpu_range, mem_range, gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a scenario instance");
  gen->add_option("--scenario", scenario, "Scenario 1-4")->check(CLI::Range(1, 4));
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--vms", gen_vms, "Override VM count");
  gen->add_option("--pms", gen_pms, "Override PM count");
  gen->add_option("--neighborhood", gen_hood, "Override neighborhood size");
  gen->add_option("--cpu-range", cpu_range, "CPU demand range lo,hi for the scenario's level");
  gen->add_option("--mem-range", mem_range, "Memory demand range lo,hi for the scenario's level");
  gen->add_option("--out", gen_out, "Problem JSON (default stdout)");

  std::string bench_config, out_dir = "results";
  std::size_t workers = 0;
  auto* bench = app.add_subcommand("bench", "Run an experiment grid");
  bench->add_option("--config", bench_config, "Experiment JSON")->required();
  bench->add_option("--out-dir", out_dir, "Directory for raw.csv, report.csv, report.json");
  bench->add_option("--workers", workers, "Override worker threads");

  std::string raw_path, stats_out;
  auto* stats = app.add_subcommand("stats", "Recompute the report from raw.csv");
  stats->add_option("--raw", raw_path, "raw.csv")->required();
  stats->add_option("--out", stats_out, "Report JSON (default: CSV to stdout)");

  int sweep_scenario = 1;
  std::vector<std::string> sweep_steps{"40x200", "80x400", "160x800"};
  SweepConfig sweep_config;
  sweep_config.stopping.max_rounds = 1;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Time the solver across problem sizes");
  sweep->add_option("--scenario", sweep_scenario, "Scenario profile 1-4")
      ->check(CLI::Range(1, 4));
  sweep->add_option("--steps", sweep_steps, "Sizes as PMSxVMS")->delimiter(',');
  sweep->add_option("--repeats", sweep_config.repeats, "Repeats per cell");
  sweep->add_option("--seed", sweep_config.seed, "Seed");
  sweep->add_option("--max-rounds", sweep_config.stopping.max_rounds, "Rounds per solve");
  sweep->add_option("--timeout-ms", sweep_config.timeout_ms, "Per-repeat timeout");
  sweep->add_flag("--baseline", sweep_config.include_baseline, "Also time the baseline");
  sweep->add_option("--out", sweep_out, "CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(solve_args);
    if (*gen) {
      return run_gen(scenario, gen_seed, gen_vms, gen_pms, gen_hood, cpu_range, mem_range,
                     gen_out);
    }
    if (*bench) return run_bench(bench_config, out_dir, workers);
    if (*stats) return run_stats(raw_path, stats_out);
    if (*sweep) {
      const auto rows = scalability_sweep(ScenarioSpec::standard(sweep_scenario),
                                          parse_steps(sweep_steps), sweep_config);
      std::ostringstream csv;
      write_sweep_csv(csv, rows);
      emit(sweep_out, csv.str());
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
