// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <map>
#include <vector>

#include "moacs/errors.hpp"
#include "moacs/tuplespace.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace moacs;
using namespace moacs::fixtures;

namespace {

std::vector<MigrationTuple> as_vector(const TupleSpace& t) {
  return {t.tuples().begin(), t.tuples().end()};
}

}  // namespace

TEST_SUITE("tuplespace") {

TEST_CASE("all PMs well-utilized gives an empty space") {
  ConsolidationProblem p({make_pm(1), make_pm(2)},
                         {make_vm(1, 0.9, 0.1, 1), make_vm(2, 0.1, 0.85, 2)});
  CHECK(build_tuple_space(p).empty());
}

TEST_CASE("two PMs in one neighborhood") {
  ConsolidationProblem p({make_pm(1), make_pm(2)},
                         {make_vm(1, 0.1, 0.1, 1), make_vm(2, 0.1, 0.1, 1),
                          make_vm(3, 0.1, 0.1, 2)});
  const auto t = build_tuple_space(p);
  const std::vector<MigrationTuple> expected{
      {pm(1), vm(1), pm(2)}, {pm(1), vm(2), pm(2)}, {pm(2), vm(3), pm(1)}};
  CHECK(as_vector(t) == expected);
  CHECK(as_vector(t) == oracle::brute_force_tuples(p));
  CHECK(t.size() == 3);
}

TEST_CASE("a singleton neighborhood may migrate anywhere") {
  ConsolidationProblem p({make_pm(1, 0), make_pm(2, 1), make_pm(3, 1)},
                         {make_vm(1, 0.1, 0.1, 1)});
  const auto t = build_tuple_space(p);
  CHECK(t.ordinal_of({pm(1), vm(1), pm(2)}).has_value());
  CHECK(t.ordinal_of({pm(1), vm(1), pm(3)}).has_value());
  CHECK(t.size() == 2);
}

TEST_CASE("C1-C3 filtering equals brute-force enumeration") {
  Rng rng(11);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t np = 2 + uniform_index(rng, 4);
    const std::size_t nv = 1 + uniform_index(rng, 10);
    const std::size_t hoods = 1 + uniform_index(rng, np);
    auto p = oracle::random_instance(rng, np, nv, 0.05, 0.7, hoods);
    if (!p) continue;
    ++checked;
    const auto t = build_tuple_space(*p);
    CHECK(as_vector(t) == oracle::brute_force_tuples(*p));
    for (std::size_t s = 0; s < t.size(); ++s) {
      CHECK(t[s].source != t[s].dest);
      CHECK(p->vms()[t.vm_index(s)].host == t[s].source);
      CHECK(t.ordinal_of(t[s]) == s);
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("worst-case tuple count") {
  CHECK(max_tuple_count(100, 1000, 5) == 400000);
  CHECK(max_tuple_count(7, 30, 1) == 0);
  CHECK_THROWS_AS(max_tuple_count(0, 10, 5), DomainError);
}

TEST_CASE("tuple count respects the worst-case bound") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = oracle::random_instance(rng, 10, 40, 0.01, 0.05, 2);
    if (!p) continue;
    std::map<std::uint32_t, std::size_t> size;
    for (const auto& m : p->pms()) ++size[raw(m.neighborhood)];
    std::size_t largest = 0;
    for (auto [h, n] : size) largest = std::max(largest, n);
    const auto t = build_tuple_space(*p);
    CHECK(t.size() <= max_tuple_count(p->num_pms(), p->num_vms(), largest));
    // Nothing is well-utilized here, so each VM sees its whole neighborhood.
    CHECK(t.size() == p->num_vms() * (largest - 1));
  }
}

TEST_CASE("explicit spaces reject invalid tuples") {
  const auto p = three_pm_instance();
  CHECK_THROWS(TupleSpace(p, {{pm(1), vm(2), pm(3)}}));
  CHECK_THROWS(TupleSpace(p, {{pm(1), vm(1), pm(1)}}));
  const TupleSpace t(p, {{pm(2), vm(2), pm(1)}, {pm(1), vm(1), pm(2)}, {pm(1), vm(1), pm(2)}});
  CHECK(t.size() == 2);
  CHECK(t[0] == MigrationTuple{pm(1), vm(1), pm(2)});
}

}  // TEST_SUITE
