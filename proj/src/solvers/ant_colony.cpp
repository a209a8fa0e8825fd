#include <algorithm>
#include <cmath>

#include "common.hpp"

namespace eosb {
namespace {

class Colony {
 public:
  Colony(const InstanceIndex& index, const SolverConfig& config)
      : index_(index),
        config_(config),
        plan_(index),
        rng_(mix_seed({config.seed, 0xacU})),
        tau_(static_cast<std::size_t>(index.opp_count()), 1.0) {
    tasks_ = detail::schedulable_tasks(index);
    const double total = std::max<double>(1.0, static_cast<double>(index.total_profit()));
    const double n = std::max(1, index.task_count());
    gain_.assign(index.task_count(), 1.0);
    for (int t = 0; t < index.task_count(); ++t) {
      switch (config.objective) {
        case Objective::kTP: gain_[t] = index.profit(t); break;
        case Objective::kTCR: gain_[t] = 1.0; break;
        case Objective::kAll: gain_[t] = index.profit(t) / total + 1.0 / n; break;
      }
    }
  }

  SolveResult run(const AntColonyHooks& hooks) {
    const Objective obj = config_.objective;
    detail::Tracker tracker;
    std::vector<int> best_opps;
    double best = -1;
    detail::Deadline deadline(config_.time_limit_s);
    bool cut = false;
    for (int it = 1; it <= config_.aco_iterations && !tasks_.empty(); ++it) {
      std::vector<int> iter_opps;
      double iter_best = -1;
      for (int a = 0; a < std::max(1, config_.aco_ants); ++a) {
        if (deadline.expired()) {
          cut = true;
          break;
        }
        construct();
        const double s = search_score(plan_, obj);
        if (s > iter_best) {
          iter_best = s;
          iter_opps = plan_.assigned_opps();
        }
      }
      if (iter_best < 0) break;
      if (iter_best > best + 1e-12) {
        best = iter_best;
        best_opps = iter_opps;
        detail::rebuild(plan_, best_opps);
        tracker.offer(it, objective_value(plan_, obj));
      }
      update(iter_opps, iter_best, best_opps, best);
      if (hooks.on_update) hooks.on_update(it, tau_);
      if (cut) break;
    }
    detail::rebuild(plan_, best_opps);
    if (best < 0) tracker.offer(0, objective_value(plan_, obj));
    return detail::finish(plan_, obj, !cut, tracker);
  }

 private:
  // One ant: tasks in random order, each placed on an option drawn in
  // proportion to tau^b1 * eta^b2, where eta rewards gain and early starts.
  void construct() {
    plan_.clear();
    std::vector<int> order = tasks_;
    rng_.shuffle(order);
    std::vector<int> options;
    std::vector<double> weights;
    for (int t : order) {
      options.clear();
      weights.clear();
      const auto opps = index_.task_opps(t);
      const std::size_t limit = static_cast<std::size_t>(std::max(1, config_.aco_candidates));
      if (opps.size() <= limit) {
        for (int o : opps) consider(o, t, options, weights);
      } else {
        const double stride = static_cast<double>(opps.size()) / static_cast<double>(limit);
        const double offset = rng_.uniform01() * stride;
        for (std::size_t k = 0; k < limit; ++k) {
          consider(opps[static_cast<std::size_t>(offset + k * stride)], t, options, weights);
        }
      }
      if (options.empty()) continue;
      double total = 0;
      for (double w : weights) total += w;
      double r = rng_.uniform01() * total;
      std::size_t pick = 0;
      while (pick + 1 < options.size() && r >= weights[pick]) r -= weights[pick++];
      plan_.insert(options[pick]);
    }
  }

  void consider(int o, int task, std::vector<int>& options, std::vector<double>& weights) {
    if (!plan_.can_insert(o)) return;
    const double earliness = 1.0 - 0.5 * index_.opp(o).start / index_.horizon_s();
    const double eta = gain_[task] * earliness;
    options.push_back(o);
    weights.push_back(std::pow(tau_[o], config_.aco_beta1) * std::pow(eta, config_.aco_beta2));
  }

  void update(const std::vector<int>& iter_opps, double iter_score, const std::vector<int>& best_opps,
              double best_score) {
    const double keep = 1.0 - config_.aco_rho;
    for (double& t : tau_) t = std::max(config_.aco_tau_min, keep * t);
    const double norm = std::max(best_score, 1e-12);
    for (int o : iter_opps) tau_[o] += iter_score / norm;
    for (int o : best_opps) tau_[o] += 1.0;
  }

  const InstanceIndex& index_;
  const SolverConfig& config_;
  PlanState plan_;
  Rng rng_;
  std::vector<double> tau_;
  std::vector<double> gain_;
  std::vector<int> tasks_;
};

}  // namespace

SolveResult ant_colony(const InstanceIndex& index, const SolverConfig& config,
                       const AntColonyHooks& hooks) {
  if (config.aco_ants < 1) throw DomainError("ACO needs at least one ant");
  Colony colony(index, config);
  return colony.run(hooks);
}

}  // namespace eosb
