// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "moacs/moacs.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <future>
#include <limits>
#include <thread>
#include <utility>

#include "moacs/errors.hpp"

namespace moacs {

void StoppingCriterion::validate() const {
  if (max_rounds == 0) throw DomainError("max_rounds must be >= 1");
  if (no_improvement_rounds == 0) throw DomainError("no_improvement_rounds must be >= 1");
}

std::size_t f_released(const MigrationPlan& plan, const ConsolidationProblem& problem) {
  return count_emptied(problem, replay(problem, plan));
}

std::optional<double> g_migrations(const MigrationPlan& plan) {
  if (plan.empty()) return std::nullopt;
  return 1.0 / static_cast<double>(plan.num_migrations());
}

namespace {

std::vector<bool> membership(const TupleSpace& space, const MigrationPlan& plan) {
  std::vector<bool> in_plan(space.size(), false);
  for (const auto& m : plan.migrations) {
    if (auto s = space.ordinal_of(m)) in_plan[*s] = true;
  }
  return in_plan;
}

void global_update(PheromoneMatrix& matrix, const TupleSpace& space, const MigrationPlan& best,
                   double deposit, double alpha) {
  if (best.empty()) return;
  const auto in_best = membership(space, best);
  for (std::size_t s = 0; s < matrix.size(); ++s) {
    const double delta = in_best[s] ? deposit : 0.0;
    matrix.set(s, std::max(kPheromoneFloor, (1.0 - alpha) * matrix.at(s) + alpha * delta));
  }
}

std::optional<SimulatedState> try_replay(const ConsolidationProblem& problem,
                                         const MigrationPlan& plan) {
  SimulatedState state(problem);
  for (const auto& m : plan.migrations) {
    const std::size_t vm = problem.vm_index(m.vm);
    const std::size_t dst = problem.pm_index(m.dest);
    if (state.host_of(vm) != problem.pm_index(m.source) || !state.fits(problem, vm, dst)) {
      return std::nullopt;
    }
    state.move(problem, vm, dst);
  }
  return state;
}

// Lexicographic "candidate beats incumbent" for the migrations colony.
bool better_nm(std::size_t f, const MigrationPlan& plan, std::size_t best_f,
               const MigrationPlan& best) {
  if (f != best_f) return f > best_f;
  if (plan.empty()) return false;
  return best.empty() || plan.num_migrations() < best.num_migrations();
}

}  // namespace

void global_update_pr(PheromoneMatrix& matrix, const TupleSpace& space,
                      const MigrationPlan& best_plan, std::size_t f_score,
                      const AcoParams& params) {
  global_update(matrix, space, best_plan, static_cast<double>(f_score), params.alpha);
}

void global_update_nm(PheromoneMatrix& matrix, const TupleSpace& space,
                      const MigrationPlan& best_plan, const AcoParams& params) {
  if (best_plan.empty()) return;
  global_update(matrix, space, best_plan, *g_migrations(best_plan), params.alpha);
}

MigrationPlan prune_plan(const ConsolidationProblem& problem, MigrationPlan plan) {
  auto state = try_replay(problem, plan);
  if (!state) throw FeasibilityError("prune_plan given an infeasible plan");
  std::size_t released = count_emptied(problem, *state);
  for (std::size_t i = plan.migrations.size(); i-- > 0;) {
    const std::size_t src = problem.pm_index(plan.migrations[i].source);
    if (state->vm_count(src) == 0) continue;
    MigrationPlan candidate = plan;
    candidate.migrations.erase(candidate.migrations.begin() + static_cast<std::ptrdiff_t>(i));
    auto next = try_replay(problem, candidate);
    if (!next) continue;
    const std::size_t f = count_emptied(problem, *next);
    if (f < released) continue;
    plan = std::move(candidate);
    state = std::move(next);
    released = f;
  }
  return plan;
}

AntWalk run_ant(const ConsolidationProblem& problem, const TupleSpace& space,
                PheromoneMatrix& matrix, const AcoParams& params, Rng& rng) {
  AntState ant(problem, space);
  std::size_t best_len = 0;
  while (!ant.remaining.empty()) {
    const std::size_t s = choose_next_tuple(ant, matrix, params, problem, space, rng);
    local_update(matrix, s, params);

    const std::size_t vm = space.vm_index(s);
    const std::size_t src = space.source_index(s);
    const std::size_t dst = space.dest_index(s);
    if (ant.migrated[vm] || ant.sim.host_of(vm) != src || !ant.sim.fits(problem, vm, dst)) {
      continue;
    }
    const bool dst_was_empty = ant.sim.vm_count(dst) == 0;
    ant.sim.move(problem, vm, dst);
    ant.migrated[vm] = true;
    ant.applied.push_back(space[s]);
    if (ant.initially_used[src] && ant.sim.vm_count(src) == 0) ++ant.emptied;
    if (ant.initially_used[dst] && dst_was_empty) --ant.emptied;

    if (ant.emptied > ant.best_score) {
      ant.best_score = ant.emptied;
      best_len = ant.applied.size();
    }
  }

  ant.accepted.migrations.assign(ant.applied.begin(),
                                 ant.applied.begin() + static_cast<std::ptrdiff_t>(best_len));
  AntWalk walk;
  walk.traversed = ant.traversed.size();
  walk.plan = ant.accepted.empty() ? MigrationPlan{} : prune_plan(problem, ant.accepted);
  walk.score = walk.plan.empty() ? 0 : f_released(walk.plan, problem);
  return walk;
}

ColonyOutcome run_colony(const ConsolidationProblem& problem, const TupleSpace& space,
                         const AcoParams& params, ColonyMode mode, std::size_t incumbent_f,
                         std::uint64_t seed, ExecutionMode execution) {
  params.validate();
  ColonyOutcome outcome;
  if (space.empty()) {
    outcome.reaches_incumbent = incumbent_f == 0;
    return outcome;
  }

  PheromoneMatrix matrix =
      init_pheromone(space, std::max<std::size_t>(1, space.under_utilized_pms()),
                     problem.num_pms());
  std::vector<AntWalk> walks(params.num_ants);

  for (std::size_t gen = 0; gen < params.num_generations; ++gen) {
    const std::uint64_t gen_seed = derive_seed(seed, gen);
    auto run_one = [&](std::size_t k) {
      Rng rng(derive_seed(gen_seed, k));
      walks[k] = run_ant(problem, space, matrix, params, rng);
    };

    if (execution == ExecutionMode::parallel && params.num_ants > 1) {
      const std::size_t workers = std::min<std::size_t>(
          params.num_ants, std::max(1u, std::thread::hardware_concurrency()));
      std::atomic<std::size_t> next{0};
      std::vector<std::exception_ptr> errors(workers);
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t k; (k = next.fetch_add(1)) < params.num_ants;) run_one(k);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    } else {
      for (std::size_t k = 0; k < params.num_ants; ++k) run_one(k);
    }

    for (auto& walk : walks) {
      const bool better = mode == ColonyMode::released
                              ? walk.score > outcome.f_score
                              : better_nm(walk.score, walk.plan, outcome.f_score,
                                          outcome.best_plan);
      if (better) {
        outcome.best_plan = walk.plan;
        outcome.f_score = walk.score;
      }
      outcome.all_plans.push_back(std::move(walk.plan));
    }

    if (mode == ColonyMode::released) {
      global_update_pr(matrix, space, outcome.best_plan, outcome.f_score, params);
    } else {
      global_update_nm(matrix, space, outcome.best_plan, params);
    }
  }

  outcome.g_score = g_migrations(outcome.best_plan);
  outcome.reaches_incumbent = outcome.f_score >= incumbent_f;
  return outcome;
}

double PlanScore::g() const {
  if (empty()) return -std::numeric_limits<double>::infinity();
  return 1.0 / static_cast<double>(migrations);
}

CoordinatorDecision coordinate(const PlanScore& released_best,
                               const std::optional<PlanScore>& migrations_best) {
  CoordinatorDecision decision;

  // The global best starts empty every round, so the released colony's plan
  // is always taken first.
  CoordinatorStep pr;
  pr.candidate_source = PlanSource::released_colony;
  pr.candidate = released_best;
  pr.incumbent = decision.score;
  pr.incumbent_empty = true;
  pr.replaced = true;
  decision.score = released_best;
  decision.chosen = PlanSource::released_colony;
  decision.log.push_back(pr);

  if (migrations_best) {
    CoordinatorStep nm;
    nm.candidate_source = PlanSource::migrations_colony;
    nm.candidate = *migrations_best;
    nm.incumbent = decision.score;
    nm.incumbent_empty = decision.score.empty();
    if (migrations_best->released >= decision.score.released &&
        migrations_best->g() > decision.score.g()) {
      decision.score = *migrations_best;
      decision.chosen = PlanSource::migrations_colony;
      nm.replaced = true;
    }
    decision.log.push_back(nm);
  }
  return decision;
}

bool respects_precedence(const CoordinatorStep& step) {
  if (!step.replaced) return true;
  if (step.incumbent_empty) return true;
  if (step.candidate.released > step.incumbent.released) return true;
  return step.candidate.released == step.incumbent.released &&
         step.candidate.g() > step.incumbent.g();
}

EnforcedPlan enforce_plan(const ConsolidationProblem& problem, const MigrationPlan& plan) {
  const auto ids = all_pm_ids(problem);
  EnforcedPlan out{plan, {}, problem.initial_state(), 0};
  for (;;) {
    // Replay, skipping anything that no longer applies.
    SimulatedState state(problem);
    MigrationPlan kept;
    std::vector<bool> migrated(problem.num_vms(), false);
    for (const auto& m : out.plan.migrations) {
      const std::size_t vm = problem.vm_index(m.vm);
      const std::size_t src = problem.pm_index(m.source);
      const std::size_t dst = problem.pm_index(m.dest);
      if (src == dst || migrated[vm] || state.host_of(vm) != src || !state.fits(problem, vm, dst)) {
        continue;
      }
      state.move(problem, vm, dst);
      migrated[vm] = true;
      kept.migrations.push_back(m);
    }

    std::vector<bool> initially_used(problem.num_pms(), false);
    for (std::size_t v = 0; v < problem.num_vms(); ++v) initially_used[problem.host_index(v)] = true;
    std::vector<bool> released(problem.num_pms(), false);
    for (std::size_t p = 0; p < problem.num_pms(); ++p) {
      released[p] = initially_used[p] && state.vm_count(p) == 0;
    }

    MigrationPlan allowed;
    for (const auto& m : kept.migrations) {
      if (!released[problem.pm_index(m.dest)]) allowed.migrations.push_back(m);
    }

    out.dropped += out.plan.num_migrations() - allowed.num_migrations();
    const bool stable = allowed.num_migrations() == kept.num_migrations() &&
                        kept.num_migrations() == out.plan.num_migrations();
    out.plan = std::move(allowed);
    if (stable) {
      out.state = std::move(state);
      out.released.clear();
      for (std::size_t p = 0; p < problem.num_pms(); ++p) {
        if (released[p]) out.released.push_back(ids[p]);
      }
      return out;
    }
  }
}

MigrationPlan ConsolidationResult::combined_plan() const {
  MigrationPlan plan;
  for (const auto& r : rounds) {
    plan.migrations.insert(plan.migrations.end(), r.plan.migrations.begin(),
                           r.plan.migrations.end());
  }
  return plan;
}

std::vector<PmId> ConsolidationResult::released_pms() const {
  std::vector<PmId> ids;
  for (const auto& r : rounds) ids.insert(ids.end(), r.released.begin(), r.released.end());
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace {

constexpr std::uint64_t kReleasedColonyTag = 1;
constexpr std::uint64_t kMigrationsColonyTag = 2;

ConsolidationResult consolidate(const ConsolidationProblem& problem, const SolverOptions& options,
                                std::uint64_t seed, bool with_migrations_colony) {
  options.params.validate();
  options.stopping.validate();
  const auto start = std::chrono::steady_clock::now();

  ConsolidationResult result;
  // PMs that start empty are idle already: they are neither counted as
  // released nor offered as destinations.
  ConsolidationProblem current = problem;
  {
    const SimulatedState initial = problem.initial_state();
    std::vector<char> keep(problem.num_pms(), 0);
    bool any_idle = false;
    for (std::size_t p = 0; p < problem.num_pms(); ++p) {
      keep[p] = initial.vm_count(p) > 0 ? 1 : 0;
      any_idle = any_idle || keep[p] == 0;
    }
    if (any_idle) current = problem.restrict_to(initial, keep);
  }
  std::size_t stale = 0;
  result.stop_reason = "max_rounds";

  for (std::size_t round = 0; round < options.stopping.max_rounds; ++round) {
    const TupleSpace space = build_tuple_space(current);
    if (space.empty()) {
      result.stop_reason = "no_candidate_migrations";
      break;
    }

    const std::uint64_t round_seed = derive_seed(seed, round);
    const std::uint64_t pr_seed = derive_seed(round_seed, kReleasedColonyTag);
    const std::uint64_t nm_seed = derive_seed(round_seed, kMigrationsColonyTag);

    ColonyOutcome pr;
    std::optional<ColonyOutcome> nm;
    if (!with_migrations_colony) {
      pr = run_colony(current, space, options.params, ColonyMode::released, 0, pr_seed,
                      options.execution);
    } else if (options.execution == ExecutionMode::parallel) {
      auto nm_future = std::async(std::launch::async, [&] {
        return run_colony(current, space, options.params, ColonyMode::migrations, 0, nm_seed,
                          options.execution);
      });
      pr = run_colony(current, space, options.params, ColonyMode::released, 0, pr_seed,
                      options.execution);
      nm = nm_future.get();
    } else {
      pr = run_colony(current, space, options.params, ColonyMode::released, 0, pr_seed,
                      options.execution);
      nm = run_colony(current, space, options.params, ColonyMode::migrations, pr.f_score,
                      nm_seed, options.execution);
    }

    const PlanScore pr_score{pr.f_score, pr.best_plan.num_migrations()};
    std::optional<PlanScore> nm_score;
    if (nm) nm_score = PlanScore{nm->f_score, nm->best_plan.num_migrations()};
    CoordinatorDecision decision = coordinate(pr_score, nm_score);
    const MigrationPlan& chosen =
        decision.chosen == PlanSource::migrations_colony ? nm->best_plan : pr.best_plan;

    EnforcedPlan enforced = enforce_plan(current, chosen);

    RoundResult rr;
    rr.plan = enforced.plan;
    rr.released = enforced.released;
    rr.migrations = enforced.plan.num_migrations();
    rr.f_score = enforced.released.size();
    rr.g_score = g_migrations(enforced.plan);
    rr.tuple_count = space.size();
    rr.dropped_at_enforcement = enforced.dropped;
    rr.coordinator = std::move(decision);
    result.total_released += rr.f_score;
    result.total_migrations += rr.migrations;
    const bool improved = rr.f_score > 0;
    result.rounds.push_back(std::move(rr));

    stale = improved ? 0 : stale + 1;
    if (stale >= options.stopping.no_improvement_rounds) {
      result.stop_reason = "no_improvement";
      break;
    }

    std::vector<char> keep(current.num_pms(), 1);
    for (PmId id : enforced.released) keep[current.pm_index(id)] = 0;
    current = current.restrict_to(enforced.state, keep);
  }

  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace

ConsolidationResult moacs_consolidate(const ConsolidationProblem& problem,
                                      const SolverOptions& options, std::uint64_t seed) {
  return consolidate(problem, options, seed, true);
}

ConsolidationResult acs_baseline(const ConsolidationProblem& problem,
                                 const SolverOptions& options, std::uint64_t seed) {
  return consolidate(problem, options, seed, false);
}

}  // namespace moacs
