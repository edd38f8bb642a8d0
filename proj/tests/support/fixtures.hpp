// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOACS_TESTS_FIXTURES_HPP
#define MOACS_TESTS_FIXTURES_HPP

#include <cstdint>
#include <vector>

#include "moacs/domain.hpp"

namespace moacs::fixtures {

inline PmId pm(std::uint32_t id) { return PmId{id}; }
inline VmId vm(std::uint32_t id) { return VmId{id}; }

inline PhysicalMachine make_pm(std::uint32_t id, std::uint32_t hood = 0, double cpu = 1.0,
                               double mem = 1.0) {
  return {PmId{id}, CapacityVector{cpu, mem}, NeighborhoodId{hood}};
}

inline VirtualMachine make_vm(std::uint32_t id, double cpu, double mem, std::uint32_t host) {
  return {VmId{id}, CapacityVector{cpu, mem}, PmId{host}};
}

/// PM1: v1 (0.3, 0.3), PM2: v2 (0.3, 0.3), PM3: v3 (0.6, 0.6).
inline ConsolidationProblem three_pm_instance() {
  return ConsolidationProblem({make_pm(1), make_pm(2), make_pm(3)},
                              {make_vm(1, 0.3, 0.3, 1), make_vm(2, 0.3, 0.3, 2),
                               make_vm(3, 0.6, 0.6, 3)});
}

/// Four PMs, each hosting one (0.2, 0.2) VM, one neighborhood.
inline ConsolidationProblem four_pm_instance() {
  return ConsolidationProblem(
      {make_pm(1), make_pm(2), make_pm(3), make_pm(4)},
      {make_vm(1, 0.2, 0.2, 1), make_vm(2, 0.2, 0.2, 2), make_vm(3, 0.2, 0.2, 3),
       make_vm(4, 0.2, 0.2, 4)});
}

inline MigrationPlan plan(std::vector<MigrationTuple> migrations) {
  return MigrationPlan{std::move(migrations)};
}

}  // namespace moacs::fixtures

#endif  // MOACS_TESTS_FIXTURES_HPP
