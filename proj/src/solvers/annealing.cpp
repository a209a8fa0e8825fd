#include <algorithm>
#include <cmath>

#include "common.hpp"

namespace eosb {
namespace {

// Undo log for one move: opportunities removed and inserted.
struct Move {
  std::vector<int> removed;
  std::vector<int> inserted;
};

void undo(PlanState& plan, const Move& m) {
  for (int o : m.inserted) plan.remove_task(plan.index().opp(o).task);
  for (int o : m.removed) plan.insert(o);
}

void remove(PlanState& plan, int task, Move& m) {
  m.removed.push_back(plan.assigned_opp(task));
  plan.remove_task(task);
}

bool try_insert(PlanState& plan, int opp, Move& m) {
  if (!plan.can_insert(opp)) return false;
  plan.insert(opp);
  m.inserted.push_back(opp);
  return true;
}

class Annealer {
 public:
  Annealer(const InstanceIndex& index, const SolverConfig& config)
      : index_(index), config_(config), plan_(index), rng_(mix_seed({config.seed, 0x5aU})) {
    for (int t : detail::schedulable_tasks(index)) tasks_.push_back(t);
  }

  // Relocate one task to another of its opportunities.
  void relocate(Move& m) {
    const int task = random_assigned();
    if (task < 0) return;
    const auto opps = index_.task_opps(task);
    const int current = plan_.assigned_opp(task);
    const int target = opps[rng_.index(opps.size())];
    if (target == current) return;
    remove(plan_, task, m);
    if (!try_insert(plan_, target, m)) {
      undo(plan_, m);
      m = {};
    }
  }

  // Exchange the timeline positions of two tasks on one satellite.
  void swap(Move& m) {
    const int a = random_assigned();
    if (a < 0) return;
    const int sat = index_.opp(plan_.assigned_opp(a)).sat;
    const auto& tl = plan_.timeline(sat);
    if (tl.size() < 2) return;
    const int ob = tl[rng_.index(tl.size())];
    const int b = index_.opp(ob).task;
    if (b == a) return;
    const double start_a = index_.opp(plan_.assigned_opp(a)).start;
    const double start_b = index_.opp(ob).start;
    remove(plan_, a, m);
    remove(plan_, b, m);
    const int na = closest(a, sat, start_b);
    const int nb = closest(b, sat, start_a);
    if (na < 0 || nb < 0 || !try_insert(plan_, na, m) || !try_insert(plan_, nb, m)) {
      undo(plan_, m);
      m = {};
    }
  }

  // Remove up to k tasks and greedily reinsert unassigned tasks in random order.
  void destroy_repair(Move& m) {
    const int k = 1 + static_cast<int>(rng_.index(static_cast<std::size_t>(std::max(1, config_.sa_destroy_max))));
    for (int i = 0; i < k; ++i) {
      const int task = random_assigned();
      if (task < 0) break;
      remove(plan_, task, m);
    }
    repair(m, 2 * k + 2);
  }

  // Insert one unassigned task at a random opportunity, else its earliest fit.
  void insert(Move& m) {
    std::vector<int> free;
    for (int t : tasks_) {
      if (!plan_.is_assigned(t)) free.push_back(t);
    }
    if (free.empty()) return;
    const int task = free[rng_.index(free.size())];
    const auto opps = index_.task_opps(task);
    if (!try_insert(plan_, opps[rng_.index(opps.size())], m)) {
      const int o = detail::first_feasible(plan_, task);
      if (o >= 0) try_insert(plan_, o, m);
    }
  }

  SolveResult run(const AnnealingHooks& hooks) {
    const Objective obj = config_.objective;
    const SolveResult seed_plan = greedy(index_, GreedyRule::kTP, config_.seed, 1);
    std::vector<int> start;
    for (const Assignment& a : seed_plan.schedule.assignments) start.push_back(static_cast<int>(a.opportunity));
    detail::rebuild(plan_, start);

    detail::Tracker tracker;
    double score = search_score(plan_, obj);
    double best = score;
    std::vector<int> best_opps = plan_.assigned_opps();
    tracker.offer(0, objective_value(plan_, obj));

    const double mean_profit =
        index_.task_count() > 0 ? static_cast<double>(index_.total_profit()) / index_.task_count() : 1.0;
    const double t0 = config_.sa_t0_factor * mean_profit;
    double temp = config_.sa_alpha > 0 ? t0 : 0.0;
    const double t_min = config_.sa_min_temp_ratio * t0;
    detail::Deadline deadline(config_.time_limit_s);
    long long step = 0;
    bool cut = false;
    if (!tasks_.empty()) {
      // With alpha = 0 the schedule is frozen: a single greedy-descent level.
      do {
        for (int it = 0; it < config_.sa_iterations_per_level; ++it, ++step) {
          if (deadline.expired()) {
            cut = true;
            break;
          }
          Move m;
          switch (rng_.index(4)) {
            case 0: relocate(m); break;
            case 1: swap(m); break;
            case 2: destroy_repair(m); break;
            default: insert(m); break;
          }
          if (m.removed.empty() && m.inserted.empty()) continue;
          const double next = search_score(plan_, obj);
          const double delta = next - score;
          const bool accept =
              delta > 0 || (temp > 0 && rng_.uniform01() < std::exp(delta / temp));
          if (!accept) {
            undo(plan_, m);
            continue;
          }
          score = next;
          if (hooks.on_accept) hooks.on_accept(delta);
          if (score > best + 1e-12) {
            best = score;
            best_opps = plan_.assigned_opps();
            tracker.offer(step, objective_value(plan_, obj));
          }
        }
        temp *= config_.sa_alpha;
      } while (!cut && temp >= t_min && temp > 0);
    }
    detail::rebuild(plan_, best_opps);
    return detail::finish(plan_, obj, !cut, tracker);
  }

 private:
  int random_assigned() {
    if (plan_.scheduled_count() == 0) return -1;
    const std::vector<int> opps = plan_.assigned_opps();
    return index_.opp(opps[rng_.index(opps.size())]).task;
  }

  // The task's opportunity on `sat` whose start is closest to `t`.
  int closest(int task, int sat, double t) const {
    int best = -1;
    double gap = 0;
    for (int o : index_.task_opps(task)) {
      if (index_.opp(o).sat != sat) continue;
      const double d = std::abs(index_.opp(o).start - t);
      if (best < 0 || d < gap) {
        best = o;
        gap = d;
      }
    }
    return best;
  }

  // Tries at most `attempts` unassigned tasks in random order.
  void repair(Move& m, int attempts) {
    std::vector<int> free;
    for (int t : tasks_) {
      if (!plan_.is_assigned(t)) free.push_back(t);
    }
    rng_.shuffle(free);
    if (static_cast<int>(free.size()) > attempts) free.resize(static_cast<std::size_t>(attempts));
    for (int t : free) {
      const auto opps = index_.task_opps(t);
      const int guess = opps[rng_.index(opps.size())];
      if (try_insert(plan_, guess, m)) continue;
      const int o = detail::first_feasible(plan_, t);
      if (o >= 0) try_insert(plan_, o, m);
    }
  }

  const InstanceIndex& index_;
  const SolverConfig& config_;
  PlanState plan_;
  Rng rng_;
  std::vector<int> tasks_;
};

}  // namespace

SolveResult simulated_annealing(const InstanceIndex& index, const SolverConfig& config,
                                const AnnealingHooks& hooks) {
  Annealer annealer(index, config);
  return annealer.run(hooks);
}

}  // namespace eosb
