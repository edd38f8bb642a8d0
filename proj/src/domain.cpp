// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "moacs/domain.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "moacs/errors.hpp"

namespace moacs {

namespace {

void check_components(std::span<const double> components) {
  for (double c : components) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw DomainError("capacity vector component must be finite and >= 0, got " +
                        std::to_string(c));
    }
  }
}

}  // namespace

CapacityVector::CapacityVector(std::size_t dimension) : components_(dimension, 0.0) {}

CapacityVector::CapacityVector(std::initializer_list<double> components)
    : components_(components) {
  check_components(components_);
}

CapacityVector::CapacityVector(std::vector<double> components)
    : components_(std::move(components)) {
  check_components(components_);
}

CapacityVector& CapacityVector::operator+=(const CapacityVector& other) {
  if (other.size() != size()) throw DomainError("capacity vector dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) components_[i] += other.components_[i];
  return *this;
}

CapacityVector& CapacityVector::operator-=(const CapacityVector& other) {
  if (other.size() != size()) throw DomainError("capacity vector dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) {
    components_[i] = std::max(0.0, components_[i] - other.components_[i]);
  }
  return *this;
}

bool CapacityVector::fits_within(const CapacityVector& bound) const {
  if (bound.size() != size()) throw DomainError("capacity vector dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) {
    if (components_[i] > bound.components_[i]) return false;
  }
  return true;
}

ConsolidationProblem::ConsolidationProblem(std::vector<PhysicalMachine> pms,
                                           std::vector<VirtualMachine> vms,
                                           double threshold, std::size_t dimension)
    : pms_(std::move(pms)),
      vms_(std::move(vms)),
      threshold_(threshold),
      dimension_(dimension) {
  if (dimension_ == 0) throw DomainError("dimension must be >= 1");
  if (!(threshold_ > 0.0 && threshold_ <= 1.0)) {
    throw DomainError("utilization threshold must lie in (0, 1]");
  }
  std::sort(pms_.begin(), pms_.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(vms_.begin(), vms_.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  capacity_.reserve(pms_.size() * dimension_);
  for (std::size_t p = 0; p < pms_.size(); ++p) {
    const auto& pm = pms_[p];
    if (!pm_lookup_.emplace(raw(pm.id), p).second) {
      throw IdentifierError("duplicate PM id " + std::to_string(raw(pm.id)));
    }
    if (pm.capacity.size() != dimension_) {
      throw DomainError("PM " + std::to_string(raw(pm.id)) + " capacity has wrong dimension");
    }
    for (double c : pm.capacity.components()) {
      if (!(c > 0.0)) {
        throw DomainError("PM " + std::to_string(raw(pm.id)) + " capacity must be > 0");
      }
      capacity_.push_back(c);
    }
    ++neighborhood_count_[raw(pm.neighborhood)];
  }

  demand_.reserve(vms_.size() * dimension_);
  host_index_.reserve(vms_.size());
  std::vector<double> load(pms_.size() * dimension_, 0.0);
  for (std::size_t v = 0; v < vms_.size(); ++v) {
    const auto& vm = vms_[v];
    if (!vm_lookup_.emplace(raw(vm.id), v).second) {
      throw IdentifierError("duplicate VM id " + std::to_string(raw(vm.id)));
    }
    if (vm.demand.size() != dimension_) {
      throw DomainError("VM " + std::to_string(raw(vm.id)) + " demand has wrong dimension");
    }
    auto it = pm_lookup_.find(raw(vm.host));
    if (it == pm_lookup_.end()) {
      throw IdentifierError("VM " + std::to_string(raw(vm.id)) + " is hosted on unknown PM " +
                            std::to_string(raw(vm.host)));
    }
    host_index_.push_back(it->second);
    for (std::size_t i = 0; i < dimension_; ++i) {
      demand_.push_back(vm.demand[i]);
      load[it->second * dimension_ + i] += vm.demand[i];
    }
  }
  for (std::size_t p = 0; p < pms_.size(); ++p) {
    for (std::size_t i = 0; i < dimension_; ++i) {
      if (load[p * dimension_ + i] > capacity_[p * dimension_ + i]) {
        throw FeasibilityError("initial placement overloads PM " +
                               std::to_string(raw(pms_[p].id)));
      }
    }
  }
}

std::size_t ConsolidationProblem::pm_index(PmId id) const {
  auto it = pm_lookup_.find(raw(id));
  if (it == pm_lookup_.end()) {
    throw IdentifierError("unknown PM id " + std::to_string(raw(id)));
  }
  return it->second;
}

std::size_t ConsolidationProblem::vm_index(VmId id) const {
  auto it = vm_lookup_.find(raw(id));
  if (it == vm_lookup_.end()) {
    throw IdentifierError("unknown VM id " + std::to_string(raw(id)));
  }
  return it->second;
}

std::size_t ConsolidationProblem::neighborhood_size(std::size_t pm) const {
  return neighborhood_count_.at(raw(pms_[pm].neighborhood));
}

SimulatedState ConsolidationProblem::initial_state() const { return SimulatedState(*this); }

bool ConsolidationProblem::well_utilized(const SimulatedState& state, std::size_t pm) const {
  const auto used = state.used(pm);
  const auto cap = capacity(pm);
  for (std::size_t i = 0; i < dimension_; ++i) {
    if (used[i] / cap[i] >= threshold_) return true;
  }
  return false;
}

ConsolidationProblem ConsolidationProblem::restrict_to(const SimulatedState& state,
                                                       std::span<const char> keep) const {
  if (keep.size() != pms_.size()) throw DomainError("keep mask has wrong size");
  std::vector<PhysicalMachine> pms;
  for (std::size_t p = 0; p < pms_.size(); ++p) {
    if (keep[p]) pms.push_back(pms_[p]);
  }
  std::vector<VirtualMachine> vms;
  vms.reserve(vms_.size());
  for (std::size_t v = 0; v < vms_.size(); ++v) {
    const std::size_t host = state.host_of(v);
    if (!keep[host]) {
      throw FeasibilityError("VM " + std::to_string(raw(vms_[v].id)) +
                             " is hosted on a dropped PM");
    }
    vms.push_back(VirtualMachine{vms_[v].id, vms_[v].demand, pms_[host].id});
  }
  return ConsolidationProblem(std::move(pms), std::move(vms), threshold_, dimension_);
}

SimulatedState::SimulatedState(const ConsolidationProblem& problem)
    : dimension_(problem.dimension()),
      used_(problem.num_pms() * problem.dimension(), 0.0),
      host_of_(problem.num_vms()),
      vm_count_(problem.num_pms(), 0) {
  for (std::size_t v = 0; v < problem.num_vms(); ++v) {
    const std::size_t host = problem.host_index(v);
    host_of_[v] = host;
    ++vm_count_[host];
    const auto demand = problem.demand(v);
    for (std::size_t i = 0; i < dimension_; ++i) used_[host * dimension_ + i] += demand[i];
  }
}

bool SimulatedState::fits(const ConsolidationProblem& problem, std::size_t vm,
                          std::size_t pm) const {
  const auto demand = problem.demand(vm);
  const auto cap = problem.capacity(pm);
  const double* used = used_.data() + pm * dimension_;
  for (std::size_t i = 0; i < dimension_; ++i) {
    if (used[i] + demand[i] > cap[i]) return false;
  }
  return true;
}

void SimulatedState::move(const ConsolidationProblem& problem, std::size_t vm, std::size_t pm) {
  const std::size_t from = host_of_[vm];
  if (from == pm) return;
  const auto demand = problem.demand(vm);
  --vm_count_[from];
  ++vm_count_[pm];
  host_of_[vm] = pm;
  for (std::size_t i = 0; i < dimension_; ++i) {
    // An emptied PM is reset to exact zero so that float residue never
    // turns a released machine into a "partially used" one.
    used_[from * dimension_ + i] =
        vm_count_[from] == 0 ? 0.0 : used_[from * dimension_ + i] - demand[i];
    used_[pm * dimension_ + i] += demand[i];
  }
}

CapacityVector aggregate_used(const ConsolidationProblem& problem, PmId pm) {
  const std::size_t p = problem.pm_index(pm);
  std::vector<double> sum(problem.dimension(), 0.0);
  for (std::size_t v = 0; v < problem.num_vms(); ++v) {
    if (problem.host_index(v) != p) continue;
    const auto demand = problem.demand(v);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += demand[i];
  }
  return CapacityVector(std::move(sum));
}

std::vector<PmId> released_set(const ConsolidationProblem& problem,
                               const SimulatedState& state, std::span<const PmId> pm_ids) {
  std::vector<PmId> out;
  for (PmId id : pm_ids) {
    if (state.vm_count(problem.pm_index(id)) == 0) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<PmId> all_pm_ids(const ConsolidationProblem& problem) {
  std::vector<PmId> ids;
  ids.reserve(problem.num_pms());
  for (const auto& pm : problem.pms()) ids.push_back(pm.id);
  return ids;
}

SimulatedState replay(const ConsolidationProblem& problem, const MigrationPlan& plan) {
  SimulatedState state(problem);
  std::vector<bool> migrated(problem.num_vms(), false);
  for (const auto& m : plan.migrations) {
    const std::size_t src = problem.pm_index(m.source);
    const std::size_t dst = problem.pm_index(m.dest);
    const std::size_t vm = problem.vm_index(m.vm);
    if (src == dst) throw FeasibilityError("migration source equals destination");
    if (migrated[vm]) {
      throw FeasibilityError("VM " + std::to_string(raw(m.vm)) + " migrates twice in one plan");
    }
    if (state.host_of(vm) != src) {
      throw FeasibilityError("VM " + std::to_string(raw(m.vm)) + " is not on PM " +
                             std::to_string(raw(m.source)));
    }
    if (!state.fits(problem, vm, dst)) {
      throw FeasibilityError("migration of VM " + std::to_string(raw(m.vm)) + " overloads PM " +
                             std::to_string(raw(m.dest)));
    }
    state.move(problem, vm, dst);
    migrated[vm] = true;
  }
  return state;
}

std::size_t count_emptied(const ConsolidationProblem& problem, const SimulatedState& state) {
  std::vector<bool> initially_used(problem.num_pms(), false);
  for (std::size_t v = 0; v < problem.num_vms(); ++v) initially_used[problem.host_index(v)] = true;
  std::size_t n = 0;
  for (std::size_t p = 0; p < problem.num_pms(); ++p) {
    if (initially_used[p] && state.vm_count(p) == 0) ++n;
  }
  return n;
}

}  // namespace moacs
