// Baseline schedulers: exact branch-and-bound, constructive greedy rules and
// three meta-heuristics. Every solver returns a schedule that passes
// validate_schedule.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eosb/core.hpp"
#include "eosb/feaslib.hpp"

namespace eosb {

enum class SolverKind { kExactBB, kGreedyTP, kGreedyTCR, kGreedyTM, kGreedyBD, kSA, kGA, kACO };
enum class Objective { kTP, kTCR, kAll };
enum class GreedyRule { kTP, kTCR, kTM, kBD };

std::string_view to_string(SolverKind k);
std::string_view to_string(Objective o);
SolverKind parse_solver_kind(std::string_view s);  // exact, greedy_tp, ..., sa, ga, aco
Objective parse_objective(std::string_view s);     // tp, tcr, all

struct SolverConfig {
  SolverKind solver = SolverKind::kGreedyTP;
  Objective objective = Objective::kTP;  // ignored by greedy rules, which imply their own
  std::uint64_t seed = 0;
  double time_limit_s = 60.0;  // soft anytime cutoff

  int greedy_restarts = 10;

  long long bb_node_limit = 20'000'000;

  double sa_t0_factor = 10.0;  // T0 = factor * mean profit
  double sa_alpha = 0.95;
  int sa_iterations_per_level = 200;
  double sa_min_temp_ratio = 1e-3;  // stop once T < ratio * T0
  int sa_destroy_max = 3;

  int ga_population = 50;
  int ga_generations = 200;
  double ga_mutation = 0.1;
  int ga_tournament = 2;

  int aco_ants = 20;
  int aco_iterations = 100;
  double aco_rho = 0.1;
  double aco_beta1 = 1.0;
  double aco_beta2 = 2.0;
  double aco_tau_min = 0.01;
  int aco_candidates = 64;  // feasible options examined per task choice
};

struct TracePoint {
  long long step = 0;  // solver-specific iteration counter
  double objective = 0;
};

struct SolveResult {
  Schedule schedule;
  double objective = 0;  // value of the optimised objective
  bool complete = true;  // false when a budget or the time limit cut the search
  std::vector<TracePoint> trace;  // incumbent improvements, non-decreasing
};

// Objective of a plan: TP in profit units, TCR as a fraction, ALL as the
// equal-weight composite of the four quality metrics.
double objective_value(const PlanState& plan, Objective objective);
// Objective rescaled to profit units, used by acceptance rules.
double search_score(const PlanState& plan, Objective objective);

std::string solver_tag(const SolverConfig& config);
Objective implied_objective(const SolverConfig& config);

SolveResult exact_branch_and_bound(const InstanceIndex& index, Objective objective,
                                   const SolverConfig& config = {});
SolveResult greedy(const InstanceIndex& index, GreedyRule rule, std::uint64_t seed, int restarts);

struct AnnealingHooks {
  // Called with the score change of every accepted move.
  std::function<void(double delta)> on_accept;
};
SolveResult simulated_annealing(const InstanceIndex& index, const SolverConfig& config,
                                const AnnealingHooks& hooks = {});

struct GeneticHooks {
  // Optional starting population, one opportunity list per individual.
  std::vector<std::vector<int>> initial_population;
  // Called after each generation with every individual's opportunity list.
  std::function<void(int generation, const std::vector<std::vector<int>>& population)> on_generation;
};
SolveResult genetic_algorithm(const InstanceIndex& index, const SolverConfig& config,
                              const GeneticHooks& hooks = {});

struct AntColonyHooks {
  // Called after each pheromone update with the per-opportunity trail.
  std::function<void(int iteration, const std::vector<double>& pheromone)> on_update;
};
SolveResult ant_colony(const InstanceIndex& index, const SolverConfig& config,
                       const AntColonyHooks& hooks = {});

// Dispatches on config.solver and stamps solver tag and wall time.
SolveResult solve(const Instance& instance, const SolverConfig& config);

}  // namespace eosb
