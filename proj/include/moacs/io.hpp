// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOACS_IO_HPP
#define MOACS_IO_HPP

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "moacs/bench.hpp"
#include "moacs/colony.hpp"
#include "moacs/domain.hpp"
#include "moacs/moacs.hpp"

namespace moacs {

using Json = nlohmann::json;

// Problem: {"dimension", "threshold", "pms": [{"id", "capacity", "neighborhood"}],
//           "vms": [{"id", "demand", "host"}]}
Json problem_to_json(const ConsolidationProblem& problem);
ConsolidationProblem problem_from_json(const Json& j);

// Plan: {"migrations": [{"source", "vm", "dest"}], "released": [...], "nM": n}
Json plan_to_json(const MigrationPlan& plan, std::span<const PmId> released);
MigrationPlan plan_from_json(const Json& j);

/// Plan JSON of the combined plan plus "rounds" detail. Contains nothing
/// timing-dependent, so equal seeds give byte-identical dumps.
Json result_plan_json(const ConsolidationResult& result);

/// {"released", "migrations", "rounds", "wall_ms"}.
Json result_metrics_json(const ConsolidationResult& result);

/// Reads alpha, beta, rho, q0, ants, generations; absent keys keep the
/// values already in params.
void params_from_json(const Json& j, AcoParams& params);
Json params_to_json(const AcoParams& params);

void stopping_from_json(const Json& j, StoppingCriterion& stopping);
Json stopping_to_json(const StoppingCriterion& stopping);

/// Experiment config file:
/// {"scenarios": [1, {"id": 2, "num_vms": 200, "num_pms": 40, ...}],
///  "algorithms": ["moacs", "acs"], "seeds": [1, 2] | {"first": 1, "count": 10},
///  "params": {...}, "stopping": {...}, "workers": n,
///  "ranges": {"low_cpu": [a, b], "high_cpu": ..., "small_mem": ..., "large_mem": ...}}
ExperimentConfig experiment_config_from_json(const Json& j);

Json report_to_json(const ExperimentReport& report, const ExperimentConfig* config = nullptr);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace moacs

#endif  // MOACS_IO_HPP
