// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOACS_MOACS_HPP
#define MOACS_MOACS_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moacs/colony.hpp"
#include "moacs/domain.hpp"
#include "moacs/tuplespace.hpp"

namespace moacs {

/// Which objective a colony rewards: released PMs or fewer migrations.
enum class ColonyMode { released, migrations };

/// Parallel mode runs the two colonies on separate threads and the ants of a
/// generation on a thread pool sharing the pheromone matrix. Only sequential
/// mode is bit-reproducible for a given seed.
enum class ExecutionMode { sequential, parallel };

struct StoppingCriterion {
  std::size_t max_rounds = 10;
  std::size_t no_improvement_rounds = 2;

  void validate() const;
};

struct SolverOptions {
  AcoParams params;
  StoppingCriterion stopping;
  ExecutionMode execution = ExecutionMode::sequential;
};

/// Number of PMs emptied by replaying plan from the initial placement.
/// Throws FeasibilityError when the plan cannot be replayed.
std::size_t f_released(const MigrationPlan& plan, const ConsolidationProblem& problem);

/// 1 / nM; nullopt for an empty plan, whose score is undefined.
std::optional<double> g_migrations(const MigrationPlan& plan);

/// Evaporates every tuple by alpha and deposits alpha * f_score on the tuples
/// of best_plan. An empty best_plan leaves the matrix untouched.
void global_update_pr(PheromoneMatrix& matrix, const TupleSpace& space,
                      const MigrationPlan& best_plan, std::size_t f_score,
                      const AcoParams& params);

/// As global_update_pr with deposit alpha / nM.
void global_update_nm(PheromoneMatrix& matrix, const TupleSpace& space,
                      const MigrationPlan& best_plan, const AcoParams& params);

/// Result of one ant's walk over the whole tuple space.
struct AntWalk {
  MigrationPlan plan;
  std::size_t score = 0;      // released PMs after replaying plan
  std::size_t traversed = 0;  // always |T|
};

/// One ant: traverses every tuple of T, applying each feasible migration to
/// its simulated state and recording the plan at each strict improvement of
/// the released count. The recorded plan is then pruned of migrations that
/// contribute nothing to the released count.
AntWalk run_ant(const ConsolidationProblem& problem, const TupleSpace& space,
                PheromoneMatrix& matrix, const AcoParams& params, Rng& rng);

/// Removes, back to front, migrations off PMs that stay in use, as long as
/// the plan still replays and releases no fewer PMs.
MigrationPlan prune_plan(const ConsolidationProblem& problem, MigrationPlan plan);

struct ColonyOutcome {
  MigrationPlan best_plan;
  std::size_t f_score = 0;
  std::optional<double> g_score;
  std::vector<MigrationPlan> all_plans;  // every ant plan of every generation
  bool reaches_incumbent = true;         // f_score >= the incumbent passed in
};

/// Runs nI generations of nA ants over space. The released colony keeps the
/// plan with the most released PMs; the migrations colony keeps the plan with
/// the most released PMs and, among those, the fewest migrations. seed is
/// the colony's master seed; ant k of generation i draws from its own
/// derived stream.
ColonyOutcome run_colony(const ConsolidationProblem& problem, const TupleSpace& space,
                         const AcoParams& params, ColonyMode mode, std::size_t incumbent_f,
                         std::uint64_t seed,
                         ExecutionMode execution = ExecutionMode::sequential);

// ---------------------------------------------------------------------------
// Coordinator

struct PlanScore {
  std::size_t released = 0;
  std::size_t migrations = 0;

  bool empty() const { return migrations == 0; }
  /// 1 / migrations, or -infinity for an empty plan.
  double g() const;
};

enum class PlanSource { none, released_colony, migrations_colony };

struct CoordinatorStep {
  PlanSource candidate_source = PlanSource::none;
  PlanScore candidate;
  PlanScore incumbent;
  bool incumbent_empty = true;
  bool replaced = false;
};

struct CoordinatorDecision {
  PlanSource chosen = PlanSource::none;
  PlanScore score;
  std::vector<CoordinatorStep> log;
};

/// Lexicographic selection of the round's global best plan from the two
/// colony results. The released colony's plan is taken when the incumbent is
/// empty or it releases more; the migrations colony's plan then replaces it
/// when it releases at least as many PMs with strictly fewer migrations.
CoordinatorDecision coordinate(const PlanScore& released_best,
                               const std::optional<PlanScore>& migrations_best);

/// True when a logged replacement respects the precedence of released PMs
/// over migrations: it replaced an empty incumbent, strictly raised the
/// released count, or tied it and strictly raised g.
bool respects_precedence(const CoordinatorStep& step);

// ---------------------------------------------------------------------------
// Consolidation

struct EnforcedPlan {
  MigrationPlan plan;
  std::vector<PmId> released;
  SimulatedState state;
  std::size_t dropped = 0;
};

/// Applies plan, dropping migrations that target a PM released by the plan
/// and any that become infeasible as a consequence, until stable.
EnforcedPlan enforce_plan(const ConsolidationProblem& problem, const MigrationPlan& plan);

struct RoundResult {
  MigrationPlan plan;
  std::vector<PmId> released;
  std::size_t migrations = 0;
  std::size_t f_score = 0;
  std::optional<double> g_score;
  std::size_t tuple_count = 0;
  std::size_t dropped_at_enforcement = 0;
  CoordinatorDecision coordinator;
};

struct ConsolidationResult {
  std::vector<RoundResult> rounds;
  std::size_t total_released = 0;
  std::size_t total_migrations = 0;
  std::chrono::duration<double, std::milli> wall_time{0};
  std::string stop_reason;

  /// Every migration of every round, in enforcement order.
  MigrationPlan combined_plan() const;
  /// Every released PM id, sorted.
  std::vector<PmId> released_pms() const;
};

/// Multi-colony consolidation: per round builds T, runs both colonies,
/// coordinates, enforces and terminates the released PMs.
ConsolidationResult moacs_consolidate(const ConsolidationProblem& problem,
                                      const SolverOptions& options, std::uint64_t seed);

/// Single-colony baseline: the released colony alone, otherwise identical.
ConsolidationResult acs_baseline(const ConsolidationProblem& problem,
                                 const SolverOptions& options, std::uint64_t seed);

}  // namespace moacs

#endif  // MOACS_MOACS_HPP
