// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "moacs/tuplespace.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "moacs/errors.hpp"

namespace moacs {

TupleSpace::TupleSpace(const ConsolidationProblem& problem, std::vector<MigrationTuple> tuples,
                       std::size_t under_utilized_pms)
    : tuples_(std::move(tuples)), under_utilized_(under_utilized_pms) {
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  source_.reserve(tuples_.size());
  vm_.reserve(tuples_.size());
  dest_.reserve(tuples_.size());
  for (std::size_t s = 0; s < tuples_.size(); ++s) {
    const auto& t = tuples_[s];
    if (t.source == t.dest) throw DomainError("tuple source equals destination");
    const std::size_t vm = problem.vm_index(t.vm);
    const std::size_t src = problem.pm_index(t.source);
    if (problem.host_index(vm) != src) {
      throw DomainError("tuple VM " + std::to_string(raw(t.vm)) + " is not on its source PM");
    }
    source_.push_back(static_cast<std::uint32_t>(src));
    vm_.push_back(static_cast<std::uint32_t>(vm));
    dest_.push_back(static_cast<std::uint32_t>(problem.pm_index(t.dest)));
    index_.emplace(t, s);
  }
}

std::optional<std::size_t> TupleSpace::ordinal_of(const MigrationTuple& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TupleSpace build_tuple_space(const ConsolidationProblem& problem) {
  const SimulatedState state = problem.initial_state();
  const auto pms = problem.pms();

  std::vector<std::size_t> under;
  for (std::size_t p = 0; p < pms.size(); ++p) {
    if (!problem.well_utilized(state, p)) under.push_back(p);
  }

  std::vector<std::vector<std::size_t>> hosted(pms.size());
  for (std::size_t v = 0; v < problem.num_vms(); ++v) hosted[problem.host_index(v)].push_back(v);

  std::vector<MigrationTuple> tuples;
  for (std::size_t src : under) {
    const bool lone = problem.neighborhood_size(src) == 1;
    for (std::size_t v : hosted[src]) {
      for (std::size_t dst : under) {
        if (dst == src) continue;
        if (!lone && pms[dst].neighborhood != pms[src].neighborhood) continue;
        tuples.push_back({pms[src].id, problem.vms()[v].id, pms[dst].id});
      }
    }
  }
  return TupleSpace(problem, std::move(tuples), under.size());
}

std::uint64_t max_tuple_count(std::uint64_t num_pms, std::uint64_t num_vms,
                              std::uint64_t neighborhood_size) {
  if (num_pms == 0 || num_vms == 0 || neighborhood_size == 0) {
    throw DomainError("max_tuple_count arguments must be >= 1");
  }
  return num_pms * num_vms * (neighborhood_size - 1);
}

}  // namespace moacs
