// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOACS_TUPLESPACE_HPP
#define MOACS_TUPLESPACE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "moacs/domain.hpp"

namespace moacs {

/// The constrained set of candidate migrations for one consolidation round.
///
/// Tuples are ordered lexicographically by (source id, vm id, dest id); the
/// ordinal of a tuple is its position in that order. Alongside the id-level
/// tuples the space keeps the machine indices of each tuple, which is what
/// the colonies work with. Immutable once built.
class TupleSpace {
 public:
  TupleSpace() = default;
  TupleSpace(const ConsolidationProblem& problem, std::vector<MigrationTuple> tuples,
             std::size_t under_utilized_pms = 0);

  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  std::span<const MigrationTuple> tuples() const { return tuples_; }
  const MigrationTuple& operator[](std::size_t ordinal) const { return tuples_[ordinal]; }

  std::optional<std::size_t> ordinal_of(const MigrationTuple& t) const;

  std::size_t source_index(std::size_t ordinal) const { return source_[ordinal]; }
  std::size_t vm_index(std::size_t ordinal) const { return vm_[ordinal]; }
  std::size_t dest_index(std::size_t ordinal) const { return dest_[ordinal]; }

  /// Number of under-utilized PMs the space was built from.
  std::size_t under_utilized_pms() const { return under_utilized_; }

 private:
  std::vector<MigrationTuple> tuples_;
  std::map<MigrationTuple, std::size_t> index_;
  std::vector<std::uint32_t> source_;
  std::vector<std::uint32_t> vm_;
  std::vector<std::uint32_t> dest_;
  std::size_t under_utilized_ = 0;
};

/// Builds T from the problem's initial placement: sources and destinations
/// are under-utilized PMs, destinations share the source's neighborhood
/// unless that neighborhood is a singleton, and the VM sits on the source.
TupleSpace build_tuple_space(const ConsolidationProblem& problem);

/// Worst-case |T| = |P| * |V| * (|N| - 1). Throws DomainError on zero input.
std::uint64_t max_tuple_count(std::uint64_t num_pms, std::uint64_t num_vms,
                              std::uint64_t neighborhood_size);

}  // namespace moacs

#endif  // MOACS_TUPLESPACE_HPP
