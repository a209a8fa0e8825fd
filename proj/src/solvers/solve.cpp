#include <chrono>

#include "eosb/solvers.hpp"

namespace eosb {

SolveResult solve(const Instance& instance, const SolverConfig& config) {
  if (!(config.time_limit_s > 0)) throw DomainError("time_limit_s must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const InstanceIndex index(instance);
  SolverConfig c = config;
  c.objective = implied_objective(config);
  SolveResult r;
  switch (c.solver) {
    case SolverKind::kExactBB: r = exact_branch_and_bound(index, c.objective, c); break;
    case SolverKind::kGreedyTP: r = greedy(index, GreedyRule::kTP, c.seed, c.greedy_restarts); break;
    case SolverKind::kGreedyTCR: r = greedy(index, GreedyRule::kTCR, c.seed, c.greedy_restarts); break;
    case SolverKind::kGreedyTM: r = greedy(index, GreedyRule::kTM, c.seed, c.greedy_restarts); break;
    case SolverKind::kGreedyBD: r = greedy(index, GreedyRule::kBD, c.seed, c.greedy_restarts); break;
    case SolverKind::kSA: r = simulated_annealing(index, c); break;
    case SolverKind::kGA: r = genetic_algorithm(index, c); break;
    case SolverKind::kACO: r = ant_colony(index, c); break;
  }
  r.schedule.instance_id = instance.id;
  r.schedule.solver = solver_tag(c);
  r.schedule.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace eosb
