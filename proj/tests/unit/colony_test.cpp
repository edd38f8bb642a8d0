// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "moacs/colony.hpp"
#include "moacs/errors.hpp"
#include "moacs/moacs.hpp"
#include "moacs/tuplespace.hpp"
#include "support/fixtures.hpp"

using namespace moacs;
using namespace moacs::fixtures;

namespace {

PhysicalMachine pm1d(std::uint32_t id, double cap = 1.0) {
  return {PmId{id}, CapacityVector{cap}, NeighborhoodId{0}};
}

VirtualMachine vm1d(std::uint32_t id, double demand, std::uint32_t host) {
  return {VmId{id}, CapacityVector{demand}, PmId{host}};
}

// PM1 hosts v1 (0.3); PM2 hosts 0.5, PM3 hosts 0.1. Moving v1 gives
// eta 0.8 towards PM2 and 0.4 towards PM3.
ConsolidationProblem two_choice_problem() {
  return ConsolidationProblem({pm1d(1), pm1d(2), pm1d(3)},
                              {vm1d(1, 0.3, 1), vm1d(2, 0.5, 2), vm1d(3, 0.1, 3)}, 0.8, 1);
}

TupleSpace two_choice_space(const ConsolidationProblem& p) {
  return TupleSpace(p, {{pm(1), vm(1), pm(2)}, {pm(1), vm(1), pm(3)}});
}

// One source PM with k VMs of equal demand, k empty-ish targets with equal
// load: every tuple (v_i -> target_i) has the same weight.
ConsolidationProblem uniform_problem(std::size_t k) {
  std::vector<PhysicalMachine> pms{pm1d(1)};
  std::vector<VirtualMachine> vms;
  for (std::uint32_t i = 0; i < k; ++i) {
    pms.push_back(pm1d(2 + i));
    vms.push_back(vm1d(1 + i, 0.05, 1));
    vms.push_back(vm1d(100 + i, 0.2, 2 + i));
  }
  return ConsolidationProblem(std::move(pms), std::move(vms), 0.8, 1);
}

TupleSpace uniform_space(const ConsolidationProblem& p, std::size_t k) {
  std::vector<MigrationTuple> t;
  for (std::uint32_t i = 0; i < k; ++i) t.push_back({pm(1), vm(1 + i), pm(2 + i)});
  return TupleSpace(p, std::move(t));
}

}  // namespace

TEST_SUITE("colony") {

TEST_CASE("initial pheromone") {
  const auto p = four_pm_instance();
  const auto space = build_tuple_space(p);
  const auto m = init_pheromone(space, 10, 100);
  CHECK(std::abs(m.tau0() - 0.001) <= 1e-12);
  CHECK(m.min() == m.tau0());
  CHECK(m.max() == m.tau0());
  CHECK(init_pheromone(space, 1, 1).tau0() == 1.0);
  CHECK_THROWS_AS(init_pheromone(space, 0, 10), DomainError);
}

TEST_CASE("heuristic single dimension") {
  ConsolidationProblem p({pm1d(1), pm1d(2)}, {vm1d(1, 0.3, 1), vm1d(2, 0.5, 2)}, 0.8, 1);
  CHECK(heuristic_value(p, p.initial_state(), 0, 1) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("heuristic is zero when any dimension overflows") {
  ConsolidationProblem p({make_pm(1), make_pm(2)},
                         {make_vm(1, 0.2, 0.1, 1), make_vm(2, 0.9, 0.1, 2)});
  CHECK(heuristic_value(p, p.initial_state(), 0, 1) == 0.0);
}

TEST_CASE("heuristic averages per-dimension ratios") {
  ConsolidationProblem p({make_pm(1), make_pm(2, 0, 2.0, 1.0)},
                         {make_vm(1, 0.2, 0.2, 1), make_vm(2, 0.4, 0.2, 2)});
  // Independent per-dimension oracle: ((0.4 + 0.2) / 2 + (0.2 + 0.2) / 1) / 2.
  const double expected = ((0.4 + 0.2) / 2.0 + (0.2 + 0.2) / 1.0) / 2.0;
  CHECK(heuristic_value(p, p.initial_state(), 0, 1) == doctest::Approx(expected).epsilon(1e-12));

  ConsolidationProblem q({make_pm(1), make_pm(2)},
                         {make_vm(1, 0.2, 0.2, 1), make_vm(2, 0.4, 0.2, 2)});
  CHECK(heuristic_value(q, q.initial_state(), 0, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("transition probabilities follow tau * eta^beta") {
  const auto p = two_choice_problem();
  const auto space = two_choice_space(p);
  const PheromoneMatrix m(space.size(), 0.001);
  const AntState ant(p, space);
  const auto probs = transition_probabilities(ant, m, 2.0, p, space);
  REQUIRE(probs.has_value());
  const double w0 = 0.001 * 0.8 * 0.8;
  const double w1 = 0.001 * 0.4 * 0.4;
  CHECK((*probs)[0] == doctest::Approx(w0 / (w0 + w1)).epsilon(1e-12));
  CHECK((*probs)[1] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK((*probs)[0] + (*probs)[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("equal weights and singleton probabilities") {
  const auto p = uniform_problem(2);
  const auto space = uniform_space(p, 2);
  const PheromoneMatrix m(space.size(), 0.5);
  AntState ant(p, space);
  auto probs = transition_probabilities(ant, m, 2.0, p, space);
  REQUIRE(probs);
  CHECK((*probs)[0] == doctest::Approx(0.5));
  CHECK((*probs)[1] == doctest::Approx(0.5));

  ant.remaining = {1};
  probs = transition_probabilities(ant, m, 2.0, p, space);
  REQUIRE(probs);
  CHECK((*probs)[0] == 0.0);
  CHECK((*probs)[1] == 1.0);
}

TEST_CASE("exploitation-only always takes the argmax") {
  const auto p = two_choice_problem();
  const auto space = two_choice_space(p);
  PheromoneMatrix m(space.size(), 0.001);
  AcoParams params;
  params.q0 = 1.0;
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    AntState ant(p, space);
    CHECK(choose_next_tuple(ant, m, params, p, space, rng) == 0);
    CHECK(ant.traversed == std::vector<std::size_t>{0});
    CHECK(ant.remaining == std::vector<std::size_t>{1});
  }
  // Raising tau of the weaker tuple enough flips the argmax.
  m.set(1, 0.01);
  AntState ant(p, space);
  CHECK(choose_next_tuple(ant, m, params, p, space, rng) == 1);
}

TEST_CASE("argmax ties go to the smaller ordinal") {
  const auto p = uniform_problem(4);
  const auto space = uniform_space(p, 4);
  const PheromoneMatrix m(space.size(), 0.3);
  AcoParams params;
  params.q0 = 1.0;
  Rng rng(9);
  AntState ant(p, space);
  ant.remaining = {3, 1, 2};
  CHECK(choose_next_tuple(ant, m, params, p, space, rng) == 1);
}

TEST_CASE("biased exploration is uniform over equal weights") {
  constexpr std::size_t k = 5;
  constexpr int draws = 100000;
  const auto p = uniform_problem(k);
  const auto space = uniform_space(p, k);
  const PheromoneMatrix m(space.size(), 0.01);
  AcoParams params;
  params.q0 = 0.0;
  Rng rng(2024);
  std::vector<int> counts(k, 0);
  const AntState fresh(p, space);
  for (int i = 0; i < draws; ++i) {
    AntState ant = fresh;
    ++counts[choose_next_tuple(ant, m, params, p, space, rng)];
  }
  const double expected = static_cast<double>(draws) / k;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 0.99 quantile of chi-square with 4 degrees of freedom.
  CHECK(chi2 < 13.2767);
}

TEST_CASE("exhausted ant is an error") {
  const auto p = two_choice_problem();
  const auto space = two_choice_space(p);
  const PheromoneMatrix m(space.size(), 0.001);
  AntState ant(p, space);
  ant.remaining.clear();
  Rng rng(1);
  CHECK_THROWS_AS(choose_next_tuple(ant, m, AcoParams{}, p, space, rng), DomainError);
}

TEST_CASE("local update single step and fixed point") {
  PheromoneMatrix m(2, 0.001);
  m.set(0, 0.01);
  AcoParams params;
  params.rho = 0.1;
  local_update(m, 0, params);
  local_update(m, 1, params);
  CHECK(std::abs(m.at(0) - 0.0091) <= 1e-12);
  CHECK(m.at(1) == doctest::Approx(0.001).epsilon(1e-15));
}

TEST_CASE("local update converges to tau0 in closed form") {
  for (double init : {0.5, 0.0001}) {
    PheromoneMatrix m(1, 0.001);
    m.set(0, init);
    AcoParams params;
    params.rho = 0.1;
    double previous = init;
    for (int n = 1; n <= 60; ++n) {
      local_update(m, 0, params);
      const double closed = 0.001 + std::pow(0.9, n) * (init - 0.001);
      CHECK(std::abs(m.at(0) - closed) <= 1e-12);
      if (init > 0.001) {
        CHECK(m.at(0) < previous);
      } else {
        CHECK(m.at(0) > previous);
      }
      previous = m.at(0);
    }
  }
}

TEST_CASE("parameter validation") {
  AcoParams params;
  params.q0 = 1.5;
  CHECK_THROWS_AS(params.validate(), DomainError);
  params = {};
  params.alpha = 0.0;
  CHECK_THROWS_AS(params.validate(), DomainError);
  params = {};
  params.num_ants = 0;
  CHECK_THROWS_AS(params.validate(), DomainError);
  CHECK_NOTHROW(AcoParams{}.validate());
}

}  // TEST_SUITE
