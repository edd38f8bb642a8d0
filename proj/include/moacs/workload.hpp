// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOACS_WORKLOAD_HPP
#define MOACS_WORKLOAD_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "moacs/domain.hpp"
#include "moacs/random.hpp"

namespace moacs {

enum class CpuLevel { low, high };
enum class MemLevel { small, large };

struct DemandRange {
  double lo = 0.0;
  double hi = 0.0;

  void validate() const;
  double mean() const { return 0.5 * (lo + hi); }
};

/// Per-level uniform demand ranges, as fractions of a PM capacity of 1.0.
struct DemandRanges {
  DemandRange low_cpu{0.01, 0.10};
  DemandRange high_cpu{0.10, 0.20};
  DemandRange small_mem{0.01, 0.10};
  DemandRange large_mem{0.10, 0.20};

  DemandRange cpu(CpuLevel level) const { return level == CpuLevel::low ? low_cpu : high_cpu; }
  DemandRange mem(MemLevel level) const { return level == MemLevel::small ? small_mem : large_mem; }
};

/// One cell of the 2x2 CPU x memory factorial design.
struct ScenarioSpec {
  int id = 1;
  std::size_t num_vms = 1000;
  std::size_t num_pms = 100;
  std::size_t neighborhood_size = 5;
  CpuLevel cpu = CpuLevel::low;
  MemLevel mem = MemLevel::small;
  std::size_t runs = 10;
  double threshold = kDefaultThreshold;

  /// Defaults: S1 low/small 1000:100, S2 high/large, S3 high/small,
  /// S4 low/large, each 1000:200. Neighborhoods of 5, 10 runs.
  static ScenarioSpec standard(int id);
  void validate() const;
};

std::string to_string(CpuLevel level);
std::string to_string(MemLevel level);

/// Random partition of pm_ids into groups of `size` (the last group takes the
/// remainder). Neighborhood ids are 0, 1, ... in group order.
std::map<PmId, NeighborhoodId> assign_neighborhoods(std::span<const PmId> pm_ids,
                                                    std::size_t size, Rng& rng);

/// Homogeneous PMs of capacity (1, ..., 1), VM demands drawn i.i.d. per
/// dimension from the scenario's level ranges, and a randomized placement:
/// VMs in random order, each on the first PM of a random PM order that has
/// room. Throws GenerationError when some VM fits nowhere after the retry
/// budget.
ConsolidationProblem generate_scenario(const ScenarioSpec& spec, std::uint64_t seed,
                                       const DemandRanges& ranges = {});

}  // namespace moacs

#endif  // MOACS_WORKLOAD_HPP
