// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOACS_BENCH_HPP
#define MOACS_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "moacs/moacs.hpp"
#include "moacs/stats.hpp"
#include "moacs/workload.hpp"

namespace moacs {

enum class Algorithm { moacs, acs };

std::string to_string(Algorithm algorithm);
/// Parses "moacs" or "acs"; throws FormatError otherwise.
Algorithm parse_algorithm(const std::string& name);

/// Runs the solver named by algorithm (always sequential).
ConsolidationResult solve(Algorithm algorithm, const ConsolidationProblem& problem,
                          const SolverOptions& options, std::uint64_t seed);

struct ExperimentConfig {
  std::vector<ScenarioSpec> scenarios;
  std::vector<Algorithm> algorithms;
  std::vector<std::uint64_t> seeds;
  AcoParams params;
  StoppingCriterion stopping;
  DemandRanges ranges;
  std::size_t workers = 1;

  void validate() const;
};

/// One solve. wall_ms covers the solver call only.
struct RunRecord {
  int scenario = 0;
  Algorithm algorithm = Algorithm::moacs;
  std::uint64_t seed = 0;
  std::size_t num_pms = 0;
  std::size_t num_vms = 0;
  std::size_t released = 0;
  std::size_t migrations = 0;
  double wall_ms = 0.0;
  std::uint64_t problem_hash = 0;
  bool failed = false;
  std::string error;
};

struct CellSummary {
  int scenario = 0;
  Algorithm algorithm = Algorithm::moacs;
  std::size_t num_pms = 0;
  std::size_t runs = 0;
  std::size_t failures = 0;
  double median_released = 0.0;
  double sd_released = 0.0;
  double median_migrations = 0.0;
  double sd_migrations = 0.0;
  double packing_efficiency = 0.0;
  double median_wall_ms = 0.0;
};

/// Paired comparison of two algorithms on one scenario; pairs share a seed
/// and therefore a problem instance. A test is absent when the sample is
/// degenerate (every difference zero) or there are no pairs.
struct PairwiseTest {
  int scenario = 0;
  Algorithm first = Algorithm::moacs;
  Algorithm second = Algorithm::acs;
  std::size_t pairs = 0;
  std::optional<WilcoxonResult> released;
  std::optional<WilcoxonResult> migrations;
};

struct ExperimentReport {
  std::vector<RunRecord> raw;
  std::vector<CellSummary> cells;
  std::vector<PairwiseTest> tests;

  bool any_failed() const;
  const CellSummary* cell(int scenario, Algorithm algorithm) const;
};

/// Stable 64-bit FNV-1a hash of every field of the problem.
std::uint64_t problem_hash(const ConsolidationProblem& problem);

/// Every (scenario, algorithm, seed) cell: generate, solve, record. A failing
/// cell is recorded as failed and the run continues. Cells run on up to
/// config.workers threads; the report does not depend on the worker count
/// except for wall times.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Aggregates and paired tests recomputed from raw records alone.
ExperimentReport summarize(std::vector<RunRecord> raw);

void write_raw_csv(std::ostream& out, std::span<const RunRecord> raw);
std::vector<RunRecord> read_raw_csv(std::istream& in);
void write_report_csv(std::ostream& out, const ExperimentReport& report);

struct SweepConfig {
  AcoParams params;
  StoppingCriterion stopping;
  DemandRanges ranges;
  std::size_t repeats = 3;
  bool include_baseline = false;
  double timeout_ms = 0.0;  // 0 disables the timeout
  std::uint64_t seed = 1;
};

struct SweepRow {
  std::size_t num_pms = 0;
  std::size_t num_vms = 0;
  std::size_t tuple_count = 0;  // |T| of the first round
  double wall_ms = 0.0;         // median over repeats
  std::optional<double> baseline_wall_ms;
  bool timed_out = false;
  std::vector<double> samples;
};

/// Times moacs_consolidate (and optionally the baseline) on base_spec
/// resized to each (num_pms, num_vms) step. A cell whose repeat exceeds the
/// timeout stops repeating and is marked timed out.
std::vector<SweepRow> scalability_sweep(const ScenarioSpec& base_spec,
                                        std::span<const std::pair<std::size_t, std::size_t>> steps,
                                        const SweepConfig& config);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace moacs

#endif  // MOACS_BENCH_HPP
