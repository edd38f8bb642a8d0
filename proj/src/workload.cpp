// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "moacs/workload.hpp"

#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "moacs/errors.hpp"

namespace moacs {

namespace {

constexpr int kPlacementAttempts = 16;

}  // namespace

void DemandRange::validate() const {
  if (!(lo >= 0.0 && hi >= lo && hi <= 1.0)) {
    throw DomainError("demand range must satisfy 0 <= lo <= hi <= 1");
  }
}

ScenarioSpec ScenarioSpec::standard(int id) {
  ScenarioSpec spec;
  spec.id = id;
  switch (id) {
    case 1:
      spec.num_pms = 100;
      spec.cpu = CpuLevel::low;
      spec.mem = MemLevel::small;
      break;
    case 2:
      spec.num_pms = 200;
      spec.cpu = CpuLevel::high;
      spec.mem = MemLevel::large;
      break;
    case 3:
      spec.num_pms = 200;
      spec.cpu = CpuLevel::high;
      spec.mem = MemLevel::small;
      break;
    case 4:
      spec.num_pms = 200;
      spec.cpu = CpuLevel::low;
      spec.mem = MemLevel::large;
      break;
    default:
      throw DomainError("scenario id must be 1..4");
  }
  return spec;
}

void ScenarioSpec::validate() const {
  if (id < 1 || id > 4) throw DomainError("scenario id must be 1..4");
  if (num_pms == 0 || num_vms == 0) throw DomainError("scenario needs PMs and VMs");
  if (neighborhood_size == 0) throw DomainError("neighborhood size must be >= 1");
  if (!(threshold > 0.0 && threshold <= 1.0)) throw DomainError("threshold must lie in (0, 1]");
}

std::string to_string(CpuLevel level) { return level == CpuLevel::low ? "low" : "high"; }
std::string to_string(MemLevel level) { return level == MemLevel::small ? "small" : "large"; }

std::map<PmId, NeighborhoodId> assign_neighborhoods(std::span<const PmId> pm_ids,
                                                    std::size_t size, Rng& rng) {
  if (size == 0) throw DomainError("neighborhood size must be >= 1");
  std::vector<PmId> order(pm_ids.begin(), pm_ids.end());
  shuffle(order.begin(), order.end(), rng);
  std::map<PmId, NeighborhoodId> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    out[order[i]] = NeighborhoodId{static_cast<std::uint32_t>(i / size)};
  }
  return out;
}

namespace {

std::optional<std::vector<std::size_t>> place(const std::vector<std::vector<double>>& demands,
                                              std::size_t num_pms, std::size_t d, Rng& rng) {
  std::vector<double> used(num_pms * d, 0.0);
  std::vector<std::size_t> host(demands.size());
  std::vector<std::size_t> vm_order(demands.size());
  std::iota(vm_order.begin(), vm_order.end(), 0);
  shuffle(vm_order.begin(), vm_order.end(), rng);
  std::vector<std::size_t> pm_order(num_pms);
  std::iota(pm_order.begin(), pm_order.end(), 0);

  for (std::size_t v : vm_order) {
    shuffle(pm_order.begin(), pm_order.end(), rng);
    bool placed = false;
    for (std::size_t p : pm_order) {
      bool fits = true;
      for (std::size_t i = 0; i < d && fits; ++i) fits = used[p * d + i] + demands[v][i] <= 1.0;
      if (!fits) continue;
      for (std::size_t i = 0; i < d; ++i) used[p * d + i] += demands[v][i];
      host[v] = p;
      placed = true;
      break;
    }
    if (!placed) return std::nullopt;
  }
  return host;
}

}  // namespace

ConsolidationProblem generate_scenario(const ScenarioSpec& spec, std::uint64_t seed,
                                       const DemandRanges& ranges) {
  spec.validate();
  const DemandRange cpu = ranges.cpu(spec.cpu);
  const DemandRange mem = ranges.mem(spec.mem);
  cpu.validate();
  mem.validate();
  constexpr std::size_t d = kDefaultDimension;

  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(spec.id)));

  std::vector<PmId> pm_ids(spec.num_pms);
  for (std::size_t p = 0; p < spec.num_pms; ++p) pm_ids[p] = PmId{static_cast<std::uint32_t>(p)};
  const auto hood = assign_neighborhoods(pm_ids, spec.neighborhood_size, rng);

  std::vector<std::vector<double>> demands(spec.num_vms);
  for (auto& dem : demands) {
    dem = {uniform_real(rng, cpu.lo, cpu.hi), uniform_real(rng, mem.lo, mem.hi)};
  }

  std::optional<std::vector<std::size_t>> host;
  for (int attempt = 0; attempt < kPlacementAttempts && !host; ++attempt) {
    host = place(demands, spec.num_pms, d, rng);
  }
  if (!host) {
    throw GenerationError("no feasible initial placement for scenario " +
                          std::to_string(spec.id) + " after " +
                          std::to_string(kPlacementAttempts) + " attempts");
  }

  std::vector<PhysicalMachine> pms;
  pms.reserve(spec.num_pms);
  for (PmId id : pm_ids) pms.push_back({id, CapacityVector{1.0, 1.0}, hood.at(id)});
  std::vector<VirtualMachine> vms;
  vms.reserve(spec.num_vms);
  for (std::size_t v = 0; v < spec.num_vms; ++v) {
    vms.push_back({VmId{static_cast<std::uint32_t>(v)}, CapacityVector(demands[v]),
                   pm_ids[(*host)[v]]});
  }
  return ConsolidationProblem(std::move(pms), std::move(vms), spec.threshold, d);
}

}  // namespace moacs
