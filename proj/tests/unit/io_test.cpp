// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "moacs/errors.hpp"
#include "moacs/io.hpp"
#include "moacs/workload.hpp"
#include "support/fixtures.hpp"

using namespace moacs;
using namespace moacs::fixtures;

TEST_SUITE("io") {

TEST_CASE("problem round trip") {
  ScenarioSpec spec = ScenarioSpec::standard(4);
  spec.num_vms = 50;
  spec.num_pms = 10;
  const auto p = generate_scenario(spec, 3);
  const auto j = problem_to_json(p);
  const auto q = problem_from_json(Json::parse(j.dump()));
  CHECK(problem_to_json(q) == j);
  CHECK(problem_hash(q) == problem_hash(p));
}

TEST_CASE("plan round trip") {
  const MigrationPlan pl = plan({{pm(1), vm(1), pm(2)}, {pm(3), vm(3), pm(2)}});
  const std::vector<PmId> released{pm(1), pm(3)};
  const auto j = plan_to_json(pl, released);
  CHECK(j["nM"] == 2);
  CHECK(j["released"] == Json::array({1, 3}));
  CHECK(plan_from_json(j) == pl);
}

TEST_CASE("malformed problems are format errors") {
  CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"pms": []})")), FormatError);
  CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"pms": [{"id": "x"}], "vms": []})")),
                  FormatError);
}

TEST_CASE("parameters from JSON keep unspecified defaults") {
  AcoParams params;
  params_from_json(Json::parse(R"({"q0": 0.5, "ants": 3})"), params);
  CHECK(params.q0 == 0.5);
  CHECK(params.num_ants == 3);
  CHECK(params.beta == 2.0);
  CHECK_THROWS_AS(params_from_json(Json::parse(R"({"rho": 2.0})"), params), DomainError);
}

TEST_CASE("experiment config") {
  const auto c = experiment_config_from_json(Json::parse(R"({
    "scenarios": [1, {"id": 2, "num_vms": 200, "num_pms": 40}],
    "seeds": {"first": 10, "count": 3},
    "params": {"generations": 4},
    "ranges": {"high_cpu": [0.1, 0.25]}
  })"));
  REQUIRE(c.scenarios.size() == 2);
  CHECK(c.scenarios[1].num_pms == 40);
  CHECK(c.seeds == std::vector<std::uint64_t>{10, 11, 12});
  CHECK(c.algorithms.size() == 2);
  CHECK(c.params.num_generations == 4);
  CHECK(c.ranges.high_cpu.hi == 0.25);
}

TEST_CASE("plan JSON is deterministic for a fixed seed") {
  ScenarioSpec spec = ScenarioSpec::standard(1);
  spec.num_vms = 60;
  spec.num_pms = 12;
  const auto p = generate_scenario(spec, 8);
  SolverOptions options;
  options.params.num_ants = 4;
  options.params.num_generations = 2;
  const auto a = result_plan_json(moacs_consolidate(p, options, 21)).dump();
  const auto b = result_plan_json(moacs_consolidate(p, options, 21)).dump();
  CHECK(a == b);
  CHECK(a.find("wall") == std::string::npos);
}

}  // TEST_SUITE
