// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOACS_DOMAIN_HPP
#define MOACS_DOMAIN_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <unordered_map>
#include <vector>

namespace moacs {

enum class PmId : std::uint32_t {};
enum class VmId : std::uint32_t {};
enum class NeighborhoodId : std::uint32_t {};

constexpr std::uint32_t raw(PmId id) { return static_cast<std::uint32_t>(id); }
constexpr std::uint32_t raw(VmId id) { return static_cast<std::uint32_t>(id); }
constexpr std::uint32_t raw(NeighborhoodId id) {
  return static_cast<std::uint32_t>(id);
}

inline constexpr std::size_t kDefaultDimension = 2;
inline constexpr double kDefaultThreshold = 0.8;

/// Non-negative resource vector. Component 0 is CPU, component 1 memory;
/// further components are allowed.
class CapacityVector {
 public:
  CapacityVector() = default;
  explicit CapacityVector(std::size_t dimension);
  CapacityVector(std::initializer_list<double> components);
  explicit CapacityVector(std::vector<double> components);

  std::size_t size() const { return components_.size(); }
  double operator[](std::size_t i) const { return components_[i]; }
  std::span<const double> components() const { return components_; }

  CapacityVector& operator+=(const CapacityVector& other);
  CapacityVector& operator-=(const CapacityVector& other);
  friend CapacityVector operator+(CapacityVector a, const CapacityVector& b) {
    return a += b;
  }

  /// Element-wise a <= b.
  bool fits_within(const CapacityVector& bound) const;

  friend bool operator==(const CapacityVector&, const CapacityVector&) = default;

 private:
  std::vector<double> components_;
};

struct PhysicalMachine {
  PmId id{};
  CapacityVector capacity;
  NeighborhoodId neighborhood{};
};

struct VirtualMachine {
  VmId id{};
  CapacityVector demand;
  PmId host{};
};

/// (source PM, VM, destination PM).
struct MigrationTuple {
  PmId source{};
  VmId vm{};
  PmId dest{};

  friend auto operator<=>(const MigrationTuple&, const MigrationTuple&) = default;
};

struct MigrationPlan {
  std::vector<MigrationTuple> migrations;

  std::size_t num_migrations() const { return migrations.size(); }
  bool empty() const { return migrations.empty(); }

  friend bool operator==(const MigrationPlan&, const MigrationPlan&) = default;
};

class SimulatedState;

/// PMs with capacities and neighborhoods plus VMs with demands and hosts.
///
/// Machines are stored sorted by id, so index order equals id order. The
/// constructor validates every invariant (unique ids, hosts exist, uniform
/// dimension, positive capacities, feasible initial placement) and throws
/// DomainError, IdentifierError or FeasibilityError otherwise.
class ConsolidationProblem {
 public:
  ConsolidationProblem(std::vector<PhysicalMachine> pms,
                       std::vector<VirtualMachine> vms,
                       double threshold = kDefaultThreshold,
                       std::size_t dimension = kDefaultDimension);

  std::size_t dimension() const { return dimension_; }
  double threshold() const { return threshold_; }
  std::span<const PhysicalMachine> pms() const { return pms_; }
  std::span<const VirtualMachine> vms() const { return vms_; }
  std::size_t num_pms() const { return pms_.size(); }
  std::size_t num_vms() const { return vms_.size(); }

  std::size_t pm_index(PmId id) const;
  std::size_t vm_index(VmId id) const;
  std::size_t host_index(std::size_t vm) const { return host_index_[vm]; }

  /// Flat, row-major views (row = machine, column = dimension).
  std::span<const double> capacity_data() const { return capacity_; }
  std::span<const double> demand_data() const { return demand_; }
  std::span<const double> capacity(std::size_t pm) const {
    return std::span<const double>(capacity_).subspan(pm * dimension_, dimension_);
  }
  std::span<const double> demand(std::size_t vm) const {
    return std::span<const double>(demand_).subspan(vm * dimension_, dimension_);
  }

  /// Number of PMs sharing pm's neighborhood, including pm itself.
  std::size_t neighborhood_size(std::size_t pm) const;

  SimulatedState initial_state() const;

  /// True when used/capacity >= threshold in at least one dimension.
  bool well_utilized(const SimulatedState& state, std::size_t pm) const;

  /// A new problem restricted to the PMs with keep[pm] nonzero, with every VM on
  /// the host recorded in state. VMs on dropped PMs are an error.
  ConsolidationProblem restrict_to(const SimulatedState& state,
                                   std::span<const char> keep) const;

 private:
  std::vector<PhysicalMachine> pms_;
  std::vector<VirtualMachine> vms_;
  double threshold_;
  std::size_t dimension_;
  std::vector<double> capacity_;
  std::vector<double> demand_;
  std::vector<std::size_t> host_index_;
  std::unordered_map<std::uint32_t, std::size_t> pm_lookup_;
  std::unordered_map<std::uint32_t, std::size_t> vm_lookup_;
  std::unordered_map<std::uint32_t, std::size_t> neighborhood_count_;
};

/// Mutable aggregate usage and VM placement. Single owner; each ant works on
/// its own copy.
class SimulatedState {
 public:
  explicit SimulatedState(const ConsolidationProblem& problem);

  std::size_t dimension() const { return dimension_; }
  std::span<const double> used(std::size_t pm) const {
    return std::span<const double>(used_).subspan(pm * dimension_, dimension_);
  }
  std::span<const double> used_data() const { return used_; }
  std::size_t host_of(std::size_t vm) const { return host_of_[vm]; }
  std::size_t vm_count(std::size_t pm) const { return vm_count_[pm]; }

  /// used[pm] + demand[vm] <= capacity[pm] element-wise.
  bool fits(const ConsolidationProblem& problem, std::size_t vm,
            std::size_t pm) const;

  /// Moves vm to pm without any capacity check.
  void move(const ConsolidationProblem& problem, std::size_t vm, std::size_t pm);

  friend bool operator==(const SimulatedState&, const SimulatedState&) = default;

 private:
  std::size_t dimension_;
  std::vector<double> used_;
  std::vector<std::size_t> host_of_;
  std::vector<std::size_t> vm_count_;
};

/// Element-wise sum of demands of the VMs initially hosted on pm.
CapacityVector aggregate_used(const ConsolidationProblem& problem, PmId pm);

/// The PMs among pm_ids that host no VM in state, sorted by id.
std::vector<PmId> released_set(const ConsolidationProblem& problem,
                               const SimulatedState& state,
                               std::span<const PmId> pm_ids);

/// All PM ids of the problem, in id order.
std::vector<PmId> all_pm_ids(const ConsolidationProblem& problem);

/// Replays plan from the initial placement. Throws FeasibilityError when a
/// VM is not on the stated source, migrates twice, or a destination would
/// overload, and IdentifierError on unknown ids.
SimulatedState replay(const ConsolidationProblem& problem,
                      const MigrationPlan& plan);

/// Count of PMs that host at least one VM in the problem's initial placement
/// and none in state.
std::size_t count_emptied(const ConsolidationProblem& problem,
                          const SimulatedState& state);

}  // namespace moacs

#endif  // MOACS_DOMAIN_HPP
