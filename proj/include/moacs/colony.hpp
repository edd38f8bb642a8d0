// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOACS_COLONY_HPP
#define MOACS_COLONY_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "moacs/domain.hpp"
#include "moacs/random.hpp"
#include "moacs/tuplespace.hpp"

namespace moacs {

/// ACS knobs. Defaults are the tuned values.
struct AcoParams {
  double alpha = 0.1;   // global decay, (0, 1]
  double beta = 2.0;    // heuristic weight, >= 0
  double rho = 0.1;     // local decay, (0, 1]
  double q0 = 0.9;      // exploitation probability, [0, 1]
  std::size_t num_ants = 10;
  std::size_t num_generations = 2;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// Smallest pheromone value the global rule may leave behind; alpha = 1
/// would otherwise evaporate unrewarded tuples to exactly zero.
inline constexpr double kPheromoneFloor = 1e-12;

/// One pheromone value per tuple ordinal.
///
/// Reads and writes of single entries go through std::atomic_ref so ants of
/// one generation may share the matrix; local_update is a CAS loop, which
/// makes each read-modify-write atomic per entry.
class PheromoneMatrix {
 public:
  PheromoneMatrix(std::size_t size, double tau0);

  std::size_t size() const { return tau_.size(); }
  double tau0() const { return tau0_; }
  double at(std::size_t ordinal) const;
  void set(std::size_t ordinal, double value);
  /// Atomic CAS on one entry; on failure expected receives the current value.
  bool compare_exchange(std::size_t ordinal, double& expected, double desired);
  double min() const;
  double max() const;

 private:
  // atomic_ref needs non-const access even for loads.
  mutable std::vector<double> tau_;
  double tau0_;
};

/// Uniform matrix with tau0 = 1 / (plan_size_estimate * num_pms).
PheromoneMatrix init_pheromone(const TupleSpace& space, std::size_t plan_size_estimate,
                               std::size_t num_pms);

/// Mean over dimensions of (U_dest + U_vm) / C_dest when the VM fits on the
/// destination, 0 otherwise.
double heuristic_value(const ConsolidationProblem& problem, const SimulatedState& state,
                       std::size_t vm, std::size_t dest);
double heuristic_value(const ConsolidationProblem& problem, const SimulatedState& state,
                       const MigrationTuple& tuple);

/// tau * eta^beta for one tuple under the given state.
double tuple_weight(const ConsolidationProblem& problem, const TupleSpace& space,
                    const PheromoneMatrix& matrix, const SimulatedState& state,
                    double beta, std::size_t ordinal);

/// Per-ant walk state.
struct AntState {
  std::vector<std::size_t> remaining;   // T_k, in swap-remove order
  std::vector<std::size_t> traversed;   // every tuple chosen, in order
  MigrationPlan accepted;               // the ant's plan
  std::size_t best_score = 0;           // best released count reached so far
  SimulatedState sim;

  // Migrations applied to sim so far; accepted is the prefix of this list up
  // to the last score improvement.
  std::vector<MigrationTuple> applied;
  std::vector<bool> migrated;           // per VM index
  std::vector<bool> initially_used;     // per PM index
  std::size_t emptied = 0;              // released count of sim
  std::vector<double> scratch;          // weights aligned with remaining

  AntState(const ConsolidationProblem& problem, const TupleSpace& space);
};

/// Probabilities of each ordinal of T (0 outside T_k). nullopt means every
/// remaining tuple has zero weight: no feasible continuation.
std::optional<std::vector<double>> transition_probabilities(
    const AntState& ant, const PheromoneMatrix& matrix, double beta,
    const ConsolidationProblem& problem, const TupleSpace& space);

/// Pseudo-random-proportional rule. With probability q0 takes the argmax of
/// tau * eta^beta over T_k (ties to the smaller ordinal), otherwise samples
/// proportionally to it (uniformly if every weight is zero). Moves the
/// chosen ordinal from remaining to traversed. Throws DomainError on an
/// exhausted ant.
std::size_t choose_next_tuple(AntState& ant, const PheromoneMatrix& matrix,
                              const AcoParams& params, const ConsolidationProblem& problem,
                              const TupleSpace& space, Rng& rng);

/// tau_s <- (1 - rho) * tau_s + rho * tau0.
void local_update(PheromoneMatrix& matrix, std::size_t ordinal, const AcoParams& params);

}  // namespace moacs

#endif  // MOACS_COLONY_HPP
