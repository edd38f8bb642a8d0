// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <vector>

#include "moacs/domain.hpp"
#include "moacs/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace moacs;
using namespace moacs::fixtures;

TEST_SUITE("domain") {

TEST_CASE("aggregate of an empty PM is the zero vector") {
  ConsolidationProblem p({make_pm(1), make_pm(2)}, {make_vm(1, 0.2, 0.1, 1)});
  CHECK(aggregate_used(p, pm(2)) == CapacityVector{0.0, 0.0});
}

TEST_CASE("aggregate sums hosted demands component-wise") {
  ConsolidationProblem p({make_pm(1)}, {make_vm(1, 0.2, 0.1, 1), make_vm(2, 0.3, 0.2, 1)});
  const auto used = aggregate_used(p, pm(1));
  CHECK(used[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(used[1] == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("aggregate matches a naive re-summation on random instances") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    auto p = oracle::random_instance(rng, 6, 20, 0.01, 0.3, 2);
    if (!p) continue;
    const SimulatedState s = p->initial_state();
    for (const auto& m : p->pms()) {
      const auto a = aggregate_used(*p, m.id);
      const auto b = oracle::naive_used(*p, m.id);
      const auto live = s.used(p->pm_index(m.id));
      for (std::size_t i = 0; i < 2; ++i) {
        CHECK(a[i] == b[i]);
        CHECK(live[i] == a[i]);
      }
    }
  }
}

TEST_CASE("released set of a fully used initial state is empty") {
  const auto p = three_pm_instance();
  const auto ids = all_pm_ids(p);
  CHECK(released_set(p, p.initial_state(), ids).empty());
}

TEST_CASE("moving the only VM off a PM releases it") {
  const auto p = three_pm_instance();
  const auto s = replay(p, plan({{pm(1), vm(1), pm(2)}}));
  const auto ids = all_pm_ids(p);
  CHECK(released_set(p, s, ids) == std::vector<PmId>{pm(1)});
  CHECK(count_emptied(p, s) == 1);
}

TEST_CASE("released set agrees with an exhaustive replay of single migrations") {
  const auto p = three_pm_instance();
  const auto ids = all_pm_ids(p);
  for (const auto& v : p.vms()) {
    for (const auto& d : p.pms()) {
      if (d.id == v.host) continue;
      const MigrationPlan one = plan({{v.host, v.id, d.id}});
      const auto naive = oracle::naive_replay(p, one);
      if (!naive.ok) {
        CHECK_THROWS_AS(replay(p, one), FeasibilityError);
        continue;
      }
      const auto s = replay(p, one);
      const auto expected = oracle::naive_released(p, naive.host);
      std::vector<PmId> expected_ids;
      for (auto id : expected) expected_ids.push_back(PmId{id});
      CHECK(released_set(p, s, ids) == expected_ids);
    }
  }
}

TEST_CASE("replay rejects infeasible plans") {
  const auto p = three_pm_instance();
  SUBCASE("overload") {
    CHECK_THROWS_AS(replay(p, plan({{pm(2), vm(2), pm(1)}, {pm(3), vm(3), pm(1)}})),
                    FeasibilityError);
  }
  SUBCASE("wrong source") { CHECK_THROWS_AS(replay(p, plan({{pm(2), vm(1), pm(3)}})), FeasibilityError); }
  SUBCASE("twice") {
    CHECK_THROWS_AS(replay(p, plan({{pm(1), vm(1), pm(2)}, {pm(2), vm(1), pm(1)}})),
                    FeasibilityError);
  }
  SUBCASE("unknown vm") { CHECK_THROWS_AS(replay(p, plan({{pm(1), vm(9), pm(2)}})), IdentifierError); }
}

TEST_CASE("problem construction validates its invariants") {
  CHECK_THROWS_AS(ConsolidationProblem({make_pm(1), make_pm(1)}, {}), IdentifierError);
  CHECK_THROWS_AS(ConsolidationProblem({make_pm(1)}, {make_vm(1, 0.1, 0.1, 2)}), IdentifierError);
  CHECK_THROWS_AS(ConsolidationProblem({make_pm(1)}, {make_vm(1, 0.7, 0.1, 1),
                                                      make_vm(2, 0.7, 0.1, 1)}),
                  FeasibilityError);
  CHECK_THROWS(CapacityVector{-0.1, 0.2});
  CHECK_THROWS_AS(ConsolidationProblem({make_pm(1, 0, 0.0, 1.0)}, {}), DomainError);
}

TEST_CASE("well-utilized means some dimension at or above the threshold") {
  ConsolidationProblem p({make_pm(1), make_pm(2), make_pm(3)},
                         {make_vm(1, 0.8, 0.1, 1), make_vm(2, 0.79, 0.79, 2),
                          make_vm(3, 0.1, 0.85, 3)});
  const auto s = p.initial_state();
  CHECK(p.well_utilized(s, 0));
  CHECK_FALSE(p.well_utilized(s, 1));
  CHECK(p.well_utilized(s, 2));
}

TEST_CASE("restrict_to keeps the surviving PMs and current hosts") {
  const auto p = four_pm_instance();
  const auto s = replay(p, plan({{pm(1), vm(1), pm(2)}}));
  const std::vector<char> keep{0, 1, 1, 1};
  const auto r = p.restrict_to(s, keep);
  CHECK(r.num_pms() == 3);
  CHECK(r.num_vms() == 4);
  CHECK(r.vms()[0].host == pm(2));
  const std::vector<char> drop_used{1, 0, 1, 1};
  CHECK_THROWS_AS(p.restrict_to(s, drop_used), FeasibilityError);
}

}  // TEST_SUITE
