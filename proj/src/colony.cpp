// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "moacs/colony.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "moacs/errors.hpp"

namespace moacs {

void AcoParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be >= 0");
  if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("rho must lie in (0, 1]");
  if (!(q0 >= 0.0 && q0 <= 1.0)) throw DomainError("q0 must lie in [0, 1]");
  if (num_ants == 0) throw DomainError("num_ants must be >= 1");
  if (num_generations == 0) throw DomainError("num_generations must be >= 1");
}

PheromoneMatrix::PheromoneMatrix(std::size_t size, double tau0) : tau_(size, tau0), tau0_(tau0) {
  if (!(tau0 > 0.0)) throw DomainError("tau0 must be > 0");
}

double PheromoneMatrix::at(std::size_t ordinal) const {
  return std::atomic_ref<double>(tau_[ordinal]).load(std::memory_order_relaxed);
}

void PheromoneMatrix::set(std::size_t ordinal, double value) {
  std::atomic_ref<double>(tau_[ordinal]).store(value, std::memory_order_relaxed);
}

bool PheromoneMatrix::compare_exchange(std::size_t ordinal, double& expected, double desired) {
  return std::atomic_ref<double>(tau_[ordinal])
      .compare_exchange_weak(expected, desired, std::memory_order_relaxed);
}

double PheromoneMatrix::min() const {
  return tau_.empty() ? tau0_ : *std::min_element(tau_.begin(), tau_.end());
}

double PheromoneMatrix::max() const {
  return tau_.empty() ? tau0_ : *std::max_element(tau_.begin(), tau_.end());
}

PheromoneMatrix init_pheromone(const TupleSpace& space, std::size_t plan_size_estimate,
                               std::size_t num_pms) {
  if (plan_size_estimate == 0 || num_pms == 0) {
    throw DomainError("plan size estimate and PM count must be >= 1");
  }
  const double tau0 =
      1.0 / (static_cast<double>(plan_size_estimate) * static_cast<double>(num_pms));
  return PheromoneMatrix(space.size(), tau0);
}

namespace {

inline double raise(double eta, double beta) {
  if (beta == 2.0) return eta * eta;
  if (beta == 1.0) return eta;
  return std::pow(eta, beta);
}

// Same formula as heuristic_value, over the flat arrays.
inline double eta_flat(const double* used, const double* demand, const double* cap,
                       std::size_t d) {
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double u = used[i] + demand[i];
    if (u > cap[i]) return 0.0;
    sum += u / cap[i];
  }
  return sum / static_cast<double>(d);
}

// Fills ant.scratch with weights aligned to ant.remaining; returns the sum.
double fill_weights(AntState& ant, const PheromoneMatrix& matrix, double beta,
                    const ConsolidationProblem& problem, const TupleSpace& space) {
  const std::size_t d = problem.dimension();
  const double* used = ant.sim.used_data().data();
  const double* demand = problem.demand_data().data();
  const double* cap = problem.capacity_data().data();
  ant.scratch.resize(ant.remaining.size());
  double total = 0.0;
  for (std::size_t i = 0; i < ant.remaining.size(); ++i) {
    const std::size_t s = ant.remaining[i];
    const std::size_t dst = space.dest_index(s);
    const double eta =
        eta_flat(used + dst * d, demand + space.vm_index(s) * d, cap + dst * d, d);
    const double w = matrix.at(s) * raise(eta, beta);
    ant.scratch[i] = w;
    total += w;
  }
  return total;
}

}  // namespace

double heuristic_value(const ConsolidationProblem& problem, const SimulatedState& state,
                       std::size_t vm, std::size_t dest) {
  return eta_flat(state.used(dest).data(), problem.demand(vm).data(),
                  problem.capacity(dest).data(), problem.dimension());
}

double heuristic_value(const ConsolidationProblem& problem, const SimulatedState& state,
                       const MigrationTuple& tuple) {
  return heuristic_value(problem, state, problem.vm_index(tuple.vm),
                         problem.pm_index(tuple.dest));
}

double tuple_weight(const ConsolidationProblem& problem, const TupleSpace& space,
                    const PheromoneMatrix& matrix, const SimulatedState& state, double beta,
                    std::size_t ordinal) {
  const double eta =
      heuristic_value(problem, state, space.vm_index(ordinal), space.dest_index(ordinal));
  return matrix.at(ordinal) * raise(eta, beta);
}

AntState::AntState(const ConsolidationProblem& problem, const TupleSpace& space)
    : sim(problem),
      migrated(problem.num_vms(), false),
      initially_used(problem.num_pms(), false) {
  remaining.resize(space.size());
  for (std::size_t s = 0; s < space.size(); ++s) remaining[s] = s;
  traversed.reserve(space.size());
  for (std::size_t v = 0; v < problem.num_vms(); ++v) initially_used[problem.host_index(v)] = true;
}

std::optional<std::vector<double>> transition_probabilities(const AntState& ant,
                                                            const PheromoneMatrix& matrix,
                                                            double beta,
                                                            const ConsolidationProblem& problem,
                                                            const TupleSpace& space) {
  std::vector<double> prob(space.size(), 0.0);
  double total = 0.0;
  for (std::size_t s : ant.remaining) {
    prob[s] = tuple_weight(problem, space, matrix, ant.sim, beta, s);
    total += prob[s];
  }
  if (!(total > 0.0)) return std::nullopt;
  for (std::size_t s : ant.remaining) prob[s] /= total;
  return prob;
}

std::size_t choose_next_tuple(AntState& ant, const PheromoneMatrix& matrix,
                              const AcoParams& params, const ConsolidationProblem& problem,
                              const TupleSpace& space, Rng& rng) {
  if (ant.remaining.empty()) throw DomainError("choose_next_tuple on an exhausted ant");
  const double q = uniform01(rng);
  const double total = fill_weights(ant, matrix, params.beta, problem, space);
  const auto& w = ant.scratch;
  const std::size_t n = ant.remaining.size();

  std::size_t pick = 0;
  if (q <= params.q0) {
    for (std::size_t i = 1; i < n; ++i) {
      if (w[i] > w[pick] || (w[i] == w[pick] && ant.remaining[i] < ant.remaining[pick])) {
        pick = i;
      }
    }
  } else if (total > 0.0) {
    const double target = uniform01(rng) * total;
    double acc = 0.0;
    pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      acc += w[i];
      if (w[i] > 0.0 && target < acc) {
        pick = i;
        break;
      }
    }
    if (pick == n) {
      // Rounding left target at the very top; take the last positive weight.
      for (std::size_t i = n; i-- > 0;) {
        if (w[i] > 0.0) {
          pick = i;
          break;
        }
      }
    }
  } else {
    pick = uniform_index(rng, n);
  }

  const std::size_t ordinal = ant.remaining[pick];
  ant.remaining[pick] = ant.remaining.back();
  ant.remaining.pop_back();
  ant.traversed.push_back(ordinal);
  return ordinal;
}

void local_update(PheromoneMatrix& matrix, std::size_t ordinal, const AcoParams& params) {
  if (ordinal >= matrix.size()) throw DomainError("pheromone ordinal out of range");
  const double tau0 = matrix.tau0();
  double current = matrix.at(ordinal);
  while (!matrix.compare_exchange(ordinal, current,
                                  (1.0 - params.rho) * current + params.rho * tau0)) {
  }
}

}  // namespace moacs
