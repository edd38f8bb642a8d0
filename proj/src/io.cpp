// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "moacs/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "moacs/errors.hpp"

namespace moacs {

namespace {

template <typename T>
T required(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
void optional_field(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

Json vector_json(const CapacityVector& v) {
  Json a = Json::array();
  for (double c : v.components()) a.push_back(c);
  return a;
}

Json tuple_json(const MigrationTuple& m) {
  return Json{{"source", raw(m.source)}, {"vm", raw(m.vm)}, {"dest", raw(m.dest)}};
}

Json ids_json(std::span<const PmId> ids) {
  Json a = Json::array();
  for (PmId id : ids) a.push_back(raw(id));
  return a;
}

DemandRange range_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("demand range must be [lo, hi]");
  DemandRange r{j[0].get<double>(), j[1].get<double>()};
  r.validate();
  return r;
}

const char* source_name(PlanSource s) {
  switch (s) {
    case PlanSource::released_colony:
      return "released_colony";
    case PlanSource::migrations_colony:
      return "migrations_colony";
    case PlanSource::none:
      break;
  }
  return "none";
}

}  // namespace

Json problem_to_json(const ConsolidationProblem& problem) {
  Json pms = Json::array();
  for (const auto& pm : problem.pms()) {
    pms.push_back({{"id", raw(pm.id)},
                   {"capacity", vector_json(pm.capacity)},
                   {"neighborhood", raw(pm.neighborhood)}});
  }
  Json vms = Json::array();
  for (const auto& vm : problem.vms()) {
    vms.push_back({{"id", raw(vm.id)}, {"demand", vector_json(vm.demand)}, {"host", raw(vm.host)}});
  }
  return Json{{"dimension", problem.dimension()},
              {"threshold", problem.threshold()},
              {"pms", std::move(pms)},
              {"vms", std::move(vms)}};
}

ConsolidationProblem problem_from_json(const Json& j) {
  std::size_t dimension = kDefaultDimension;
  double threshold = kDefaultThreshold;
  optional_field(j, "dimension", dimension);
  optional_field(j, "threshold", threshold);
  const Json pms_j = required<Json>(j, "pms");
  const Json vms_j = required<Json>(j, "vms");
  if (!pms_j.is_array() || !vms_j.is_array()) throw FormatError("'pms' and 'vms' must be arrays");

  std::vector<PhysicalMachine> pms;
  for (const auto& p : pms_j) {
    PhysicalMachine pm;
    pm.id = PmId{required<std::uint32_t>(p, "id")};
    pm.capacity = CapacityVector(required<std::vector<double>>(p, "capacity"));
    std::uint32_t hood = raw(pm.id);
    optional_field(p, "neighborhood", hood);
    pm.neighborhood = NeighborhoodId{hood};
    pms.push_back(std::move(pm));
  }
  std::vector<VirtualMachine> vms;
  for (const auto& v : vms_j) {
    VirtualMachine vm;
    vm.id = VmId{required<std::uint32_t>(v, "id")};
    vm.demand = CapacityVector(required<std::vector<double>>(v, "demand"));
    vm.host = PmId{required<std::uint32_t>(v, "host")};
    vms.push_back(std::move(vm));
  }
  return ConsolidationProblem(std::move(pms), std::move(vms), threshold, dimension);
}

Json plan_to_json(const MigrationPlan& plan, std::span<const PmId> released) {
  Json migrations = Json::array();
  for (const auto& m : plan.migrations) migrations.push_back(tuple_json(m));
  return Json{{"migrations", std::move(migrations)},
              {"released", ids_json(released)},
              {"nM", plan.num_migrations()}};
}

MigrationPlan plan_from_json(const Json& j) {
  MigrationPlan plan;
  for (const auto& m : required<Json>(j, "migrations")) {
    plan.migrations.push_back({PmId{required<std::uint32_t>(m, "source")},
                               VmId{required<std::uint32_t>(m, "vm")},
                               PmId{required<std::uint32_t>(m, "dest")}});
  }
  return plan;
}

Json result_plan_json(const ConsolidationResult& result) {
  const auto released = result.released_pms();
  Json j = plan_to_json(result.combined_plan(), released);
  Json rounds = Json::array();
  for (const auto& r : result.rounds) {
    Json log = Json::array();
    for (const auto& step : r.coordinator.log) {
      log.push_back({{"candidate", source_name(step.candidate_source)},
                     {"candidate_released", step.candidate.released},
                     {"candidate_migrations", step.candidate.migrations},
                     {"incumbent_released", step.incumbent.released},
                     {"incumbent_migrations", step.incumbent.migrations},
                     {"incumbent_empty", step.incumbent_empty},
                     {"replaced", step.replaced}});
    }
    Json round = plan_to_json(r.plan, r.released);
    round["tuples"] = r.tuple_count;
    round["f"] = r.f_score;
    round["g"] = r.g_score ? Json(*r.g_score) : Json(nullptr);
    round["chosen"] = source_name(r.coordinator.chosen);
    round["dropped_at_enforcement"] = r.dropped_at_enforcement;
    round["coordinator_log"] = std::move(log);
    rounds.push_back(std::move(round));
  }
  j["rounds"] = std::move(rounds);
  j["stop_reason"] = result.stop_reason;
  return j;
}

Json result_metrics_json(const ConsolidationResult& result) {
  return Json{{"released", result.total_released},
              {"migrations", result.total_migrations},
              {"rounds", result.rounds.size()},
              {"wall_ms", result.wall_time.count()}};
}

void params_from_json(const Json& j, AcoParams& params) {
  optional_field(j, "alpha", params.alpha);
  optional_field(j, "beta", params.beta);
  optional_field(j, "rho", params.rho);
  optional_field(j, "q0", params.q0);
  optional_field(j, "ants", params.num_ants);
  optional_field(j, "generations", params.num_generations);
  params.validate();
}

Json params_to_json(const AcoParams& params) {
  return Json{{"alpha", params.alpha}, {"beta", params.beta},
              {"rho", params.rho},     {"q0", params.q0},
              {"ants", params.num_ants}, {"generations", params.num_generations}};
}

void stopping_from_json(const Json& j, StoppingCriterion& stopping) {
  optional_field(j, "max_rounds", stopping.max_rounds);
  optional_field(j, "no_improvement_rounds", stopping.no_improvement_rounds);
  stopping.validate();
}

Json stopping_to_json(const StoppingCriterion& stopping) {
  return Json{{"max_rounds", stopping.max_rounds},
              {"no_improvement_rounds", stopping.no_improvement_rounds}};
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  ExperimentConfig config;
  for (const auto& s : required<Json>(j, "scenarios")) {
    if (s.is_number_integer()) {
      config.scenarios.push_back(ScenarioSpec::standard(s.get<int>()));
      continue;
    }
    ScenarioSpec spec = ScenarioSpec::standard(required<int>(s, "id"));
    optional_field(s, "num_vms", spec.num_vms);
    optional_field(s, "num_pms", spec.num_pms);
    optional_field(s, "neighborhood_size", spec.neighborhood_size);
    optional_field(s, "runs", spec.runs);
    optional_field(s, "threshold", spec.threshold);
    config.scenarios.push_back(spec);
  }

  if (j.contains("algorithms")) {
    for (const auto& a : j.at("algorithms")) config.algorithms.push_back(parse_algorithm(a));
  } else {
    config.algorithms = {Algorithm::moacs, Algorithm::acs};
  }

  if (j.contains("seeds")) {
    const Json& s = j.at("seeds");
    if (s.is_array()) {
      for (const auto& v : s) config.seeds.push_back(v.get<std::uint64_t>());
    } else {
      const auto first = required<std::uint64_t>(s, "first");
      const auto count = required<std::uint64_t>(s, "count");
      for (std::uint64_t i = 0; i < count; ++i) config.seeds.push_back(first + i);
    }
  } else {
    // One seed per run of the first scenario.
    const std::size_t runs = config.scenarios.empty() ? 10 : config.scenarios.front().runs;
    for (std::size_t i = 0; i < runs; ++i) config.seeds.push_back(i + 1);
  }

  if (j.contains("params")) params_from_json(j.at("params"), config.params);
  if (j.contains("stopping")) stopping_from_json(j.at("stopping"), config.stopping);
  optional_field(j, "workers", config.workers);
  if (j.contains("ranges")) {
    const Json& r = j.at("ranges");
    if (r.contains("low_cpu")) config.ranges.low_cpu = range_from_json(r.at("low_cpu"));
    if (r.contains("high_cpu")) config.ranges.high_cpu = range_from_json(r.at("high_cpu"));
    if (r.contains("small_mem")) config.ranges.small_mem = range_from_json(r.at("small_mem"));
    if (r.contains("large_mem")) config.ranges.large_mem = range_from_json(r.at("large_mem"));
  }
  config.validate();
  return config;
}

Json report_to_json(const ExperimentReport& report, const ExperimentConfig* config) {
  Json cells = Json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"scenario", c.scenario},
                     {"algorithm", to_string(c.algorithm)},
                     {"num_pms", c.num_pms},
                     {"runs", c.runs},
                     {"failures", c.failures},
                     {"median_released", c.median_released},
                     {"sd_released", c.sd_released},
                     {"median_migrations", c.median_migrations},
                     {"sd_migrations", c.sd_migrations},
                     {"packing_efficiency", c.packing_efficiency},
                     {"median_wall_ms", c.median_wall_ms}});
  }
  auto test_json = [](const std::optional<WilcoxonResult>& w) -> Json {
    if (!w) return nullptr;
    return Json{{"w_plus", w->w_plus}, {"w_minus", w->w_minus}, {"statistic", w->statistic},
                {"p_value", w->p_value}, {"n", w->n},           {"exact", w->exact}};
  };
  Json tests = Json::array();
  for (const auto& t : report.tests) {
    tests.push_back({{"scenario", t.scenario},
                     {"first", to_string(t.first)},
                     {"second", to_string(t.second)},
                     {"pairs", t.pairs},
                     {"released", test_json(t.released)},
                     {"migrations", test_json(t.migrations)}});
  }
  Json j{{"cells", std::move(cells)}, {"tests", std::move(tests)},
         {"failed_runs", std::count_if(report.raw.begin(), report.raw.end(),
                                       [](const RunRecord& r) { return r.failed; })}};
  if (config) {
    const auto& r = config->ranges;
    j["config"] = {{"params", params_to_json(config->params)},
                   {"stopping", stopping_to_json(config->stopping)},
                   {"seeds", config->seeds},
                   {"ranges",
                    {{"low_cpu", {r.low_cpu.lo, r.low_cpu.hi}},
                     {"high_cpu", {r.high_cpu.lo, r.high_cpu.hi}},
                     {"small_mem", {r.small_mem.lo, r.small_mem.hi}},
                     {"large_mem", {r.large_mem.lo, r.large_mem.hi}}}}};
  }
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

}  // namespace moacs
