// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "moacs/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstring>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "moacs/errors.hpp"

namespace moacs {

std::string to_string(Algorithm algorithm) {
  return algorithm == Algorithm::moacs ? "moacs" : "acs";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "moacs") return Algorithm::moacs;
  if (name == "acs") return Algorithm::acs;
  throw FormatError("unknown algorithm '" + name + "' (expected moacs or acs)");
}

ConsolidationResult solve(Algorithm algorithm, const ConsolidationProblem& problem,
                          const SolverOptions& options, std::uint64_t seed) {
  return algorithm == Algorithm::moacs ? moacs_consolidate(problem, options, seed)
                                       : acs_baseline(problem, options, seed);
}

void ExperimentConfig::validate() const {
  if (scenarios.empty() || algorithms.empty() || seeds.empty()) {
    throw DomainError("experiment needs at least one scenario, algorithm and seed");
  }
  for (const auto& s : scenarios) s.validate();
  params.validate();
  stopping.validate();
  if (workers == 0) throw DomainError("workers must be >= 1");
}

bool ExperimentReport::any_failed() const {
  return std::any_of(raw.begin(), raw.end(), [](const RunRecord& r) { return r.failed; });
}

const CellSummary* ExperimentReport::cell(int scenario, Algorithm algorithm) const {
  for (const auto& c : cells) {
    if (c.scenario == scenario && c.algorithm == algorithm) return &c;
  }
  return nullptr;
}

namespace {

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t x) { bytes(&x, sizeof x); }
  void f64(double x) { u64(std::bit_cast<std::uint64_t>(x)); }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::uint64_t problem_hash(const ConsolidationProblem& problem) {
  Fnv1a h;
  h.u64(problem.dimension());
  h.f64(problem.threshold());
  h.u64(problem.num_pms());
  for (const auto& pm : problem.pms()) {
    h.u64(raw(pm.id));
    h.u64(raw(pm.neighborhood));
    for (double c : pm.capacity.components()) h.f64(c);
  }
  h.u64(problem.num_vms());
  for (const auto& vm : problem.vms()) {
    h.u64(raw(vm.id));
    h.u64(raw(vm.host));
    for (double c : vm.demand.components()) h.f64(c);
  }
  return h.value();
}

namespace {

struct CellTask {
  std::size_t scenario_index;
  std::uint64_t seed;
};

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  SolverOptions options{config.params, config.stopping, ExecutionMode::sequential};

  // One task per (scenario, seed): every algorithm solves the same instance.
  std::vector<CellTask> tasks;
  for (std::size_t s = 0; s < config.scenarios.size(); ++s) {
    for (std::uint64_t seed : config.seeds) tasks.push_back({s, seed});
  }
  std::vector<std::vector<RunRecord>> results(tasks.size());

  auto run_task = [&](std::size_t t) {
    const auto& spec = config.scenarios[tasks[t].scenario_index];
    const std::uint64_t seed = tasks[t].seed;
    std::optional<ConsolidationProblem> problem;
    std::string generation_error;
    try {
      problem = generate_scenario(spec, seed, config.ranges);
    } catch (const std::exception& e) {
      generation_error = e.what();
    }
    for (Algorithm algo : config.algorithms) {
      RunRecord rec;
      rec.scenario = spec.id;
      rec.algorithm = algo;
      rec.seed = seed;
      rec.num_pms = spec.num_pms;
      rec.num_vms = spec.num_vms;
      if (!problem) {
        rec.failed = true;
        rec.error = generation_error;
      } else {
        rec.problem_hash = problem_hash(*problem);
        try {
          const auto start = std::chrono::steady_clock::now();
          const ConsolidationResult r = solve(algo, *problem, options, seed);
          rec.wall_ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
          rec.released = r.total_released;
          rec.migrations = r.total_migrations;
        } catch (const std::exception& e) {
          rec.failed = true;
          rec.error = e.what();
        }
      }
      results[t].push_back(std::move(rec));
    }
  };

  const std::size_t workers = std::min(config.workers, tasks.size());
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) run_task(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<RunRecord> raw;
  for (auto& r : results) {
    for (auto& rec : r) raw.push_back(std::move(rec));
  }
  return summarize(std::move(raw));
}

ExperimentReport summarize(std::vector<RunRecord> raw) {
  ExperimentReport report;
  report.raw = std::move(raw);

  std::vector<int> scenarios;
  std::vector<Algorithm> algorithms;
  for (const auto& r : report.raw) {
    if (std::find(scenarios.begin(), scenarios.end(), r.scenario) == scenarios.end()) {
      scenarios.push_back(r.scenario);
    }
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end()) {
      algorithms.push_back(r.algorithm);
    }
  }

  for (int s : scenarios) {
    for (Algorithm a : algorithms) {
      CellSummary cell;
      cell.scenario = s;
      cell.algorithm = a;
      std::vector<double> released, migrations, wall;
      for (const auto& r : report.raw) {
        if (r.scenario != s || r.algorithm != a) continue;
        cell.num_pms = r.num_pms;
        ++cell.runs;
        if (r.failed) {
          ++cell.failures;
          continue;
        }
        released.push_back(static_cast<double>(r.released));
        migrations.push_back(static_cast<double>(r.migrations));
        wall.push_back(r.wall_ms);
      }
      if (cell.runs == 0) continue;
      if (!released.empty()) {
        cell.median_released = median(released);
        cell.sd_released = sample_sd(released);
        cell.median_migrations = median(migrations);
        cell.sd_migrations = sample_sd(migrations);
        cell.median_wall_ms = median(wall);
        cell.packing_efficiency = packing_efficiency(cell.median_released, cell.num_pms);
      }
      report.cells.push_back(cell);
    }

    for (std::size_t i = 0; i < algorithms.size(); ++i) {
      for (std::size_t j = i + 1; j < algorithms.size(); ++j) {
        PairwiseTest test;
        test.scenario = s;
        test.first = algorithms[i];
        test.second = algorithms[j];
        std::map<std::uint64_t, std::pair<const RunRecord*, const RunRecord*>> paired;
        for (const auto& r : report.raw) {
          if (r.scenario != s || r.failed) continue;
          if (r.algorithm == test.first) paired[r.seed].first = &r;
          if (r.algorithm == test.second) paired[r.seed].second = &r;
        }
        std::vector<double> ra, rb, ma, mb;
        for (const auto& [seed, p] : paired) {
          if (!p.first || !p.second) continue;
          ra.push_back(static_cast<double>(p.first->released));
          rb.push_back(static_cast<double>(p.second->released));
          ma.push_back(static_cast<double>(p.first->migrations));
          mb.push_back(static_cast<double>(p.second->migrations));
        }
        test.pairs = ra.size();
        if (test.pairs > 0) {
          try {
            test.released = wilcoxon_signed_rank(ra, rb);
          } catch (const DegenerateSampleError&) {
          }
          try {
            test.migrations = wilcoxon_signed_rank(ma, mb);
          } catch (const DegenerateSampleError&) {
          }
        }
        report.tests.push_back(test);
      }
    }
  }
  return report;
}

namespace {

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

constexpr const char* kRawHeader =
    "scenario,algo,seed,released,migrations,wall_ms,num_pms,num_vms,problem_hash,status,error";

}  // namespace

void write_raw_csv(std::ostream& out, std::span<const RunRecord> raw) {
  out << kRawHeader << '\n';
  for (const auto& r : raw) {
    out << r.scenario << ',' << to_string(r.algorithm) << ',' << r.seed << ',' << r.released << ','
        << r.migrations << ',' << r.wall_ms << ',' << r.num_pms << ',' << r.num_vms << ','
        << r.problem_hash << ',' << (r.failed ? "failed" : "ok") << ',' << sanitize(r.error)
        << '\n';
  }
}

std::vector<RunRecord> read_raw_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("raw CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* required : {"scenario", "algo", "seed", "released", "migrations", "wall_ms"}) {
    if (!col.count(required)) {
      throw FormatError(std::string("raw CSV lacks column '") + required + "'");
    }
  }

  std::vector<RunRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    auto get = [&](const std::string& name) -> std::string {
      auto it = col.find(name);
      if (it == col.end() || it->second >= f.size()) return {};
      return f[it->second];
    };
    try {
      RunRecord r;
      r.scenario = std::stoi(get("scenario"));
      r.algorithm = parse_algorithm(get("algo"));
      r.seed = std::stoull(get("seed"));
      r.released = std::stoull(get("released"));
      r.migrations = std::stoull(get("migrations"));
      r.wall_ms = std::stod(get("wall_ms"));
      if (auto v = get("num_pms"); !v.empty()) r.num_pms = std::stoull(v);
      if (auto v = get("num_vms"); !v.empty()) r.num_vms = std::stoull(v);
      if (auto v = get("problem_hash"); !v.empty()) r.problem_hash = std::stoull(v);
      r.failed = get("status") == "failed";
      r.error = get("error");
      out.push_back(std::move(r));
    } catch (const FormatError&) {
      throw;
    } catch (const std::exception&) {
      throw FormatError("raw CSV line " + std::to_string(line_no) + " is malformed");
    }
  }
  return out;
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
  out << "scenario,algo,num_pms,runs,failures,median_released,sd_released,median_migrations,"
         "sd_migrations,packing_efficiency,median_wall_ms\n";
  for (const auto& c : report.cells) {
    out << c.scenario << ',' << to_string(c.algorithm) << ',' << c.num_pms << ',' << c.runs << ','
        << c.failures << ',' << c.median_released << ',' << c.sd_released << ','
        << c.median_migrations << ',' << c.sd_migrations << ',' << c.packing_efficiency << ','
        << c.median_wall_ms << '\n';
  }
}

std::vector<SweepRow> scalability_sweep(const ScenarioSpec& base_spec,
                                        std::span<const std::pair<std::size_t, std::size_t>> steps,
                                        const SweepConfig& config) {
  if (steps.empty()) throw DomainError("scalability sweep needs at least one step");
  if (config.repeats == 0) throw DomainError("sweep repeats must be >= 1");
  SolverOptions options{config.params, config.stopping, ExecutionMode::sequential};

  auto time_ms = [](auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };

  std::vector<SweepRow> rows;
  for (const auto& [num_pms, num_vms] : steps) {
    ScenarioSpec spec = base_spec;
    spec.num_pms = num_pms;
    spec.num_vms = num_vms;
    const ConsolidationProblem problem = generate_scenario(spec, config.seed, config.ranges);

    SweepRow row;
    row.num_pms = num_pms;
    row.num_vms = num_vms;
    row.tuple_count = build_tuple_space(problem).size();
    for (std::size_t rep = 0; rep < config.repeats; ++rep) {
      const double ms = time_ms([&] { (void)moacs_consolidate(problem, options, config.seed + rep); });
      row.samples.push_back(ms);
      if (config.timeout_ms > 0.0 && ms > config.timeout_ms) {
        row.timed_out = true;
        break;
      }
    }
    row.wall_ms = median(row.samples);
    if (config.include_baseline && !row.timed_out) {
      std::vector<double> base;
      for (std::size_t rep = 0; rep < config.repeats; ++rep) {
        base.push_back(time_ms([&] { (void)acs_baseline(problem, options, config.seed + rep); }));
      }
      row.baseline_wall_ms = median(base);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "num_pms,num_vms,tuple_count,wall_ms,baseline_wall_ms,timed_out\n";
  for (const auto& r : rows) {
    out << r.num_pms << ',' << r.num_vms << ',' << r.tuple_count << ',' << r.wall_ms << ',';
    if (r.baseline_wall_ms) out << *r.baseline_wall_ms;
    out << ',' << (r.timed_out ? "true" : "false") << '\n';
  }
}

}  // namespace moacs
