#include <algorithm>
#include <set>

#include "common.hpp"
#include "eosb/evallib.hpp"

namespace eosb {
namespace {

using detail::first_feasible;

// Distinct visible windows per task that carry at least one opportunity.
std::vector<int> window_counts(const InstanceIndex& index) {
  const auto& opps = index.instance().opportunities;
  std::vector<int> counts(index.task_count(), 0);
  for (int t = 0; t < index.task_count(); ++t) {
    std::set<std::size_t> windows;
    for (int o : index.task_opps(t)) windows.insert(opps[o].window_index);
    counts[t] = static_cast<int>(windows.size());
  }
  return counts;
}

// Sorts by key, breaking ties by a per-restart random rank (index order on
// the first restart).
std::vector<int> ordered(const std::vector<int>& tasks, const std::vector<double>& key, Rng& rng,
                         bool first) {
  std::vector<std::uint64_t> rank(key.size());
  for (std::size_t i = 0; i < rank.size(); ++i) rank[i] = first ? i : rng.next();
  std::vector<int> out = tasks;
  std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
    if (key[a] != key[b]) return key[a] < key[b];
    return rank[a] < rank[b];
  });
  return out;
}

int least_loaded_choice(const PlanState& plan, int task) {
  int best = -1;
  int best_count = 0;
  for (int o : plan.index().task_opps(task)) {
    const int sat = plan.index().opp(o).sat;
    const int count = plan.sat_counts()[sat];
    if (best >= 0 && count >= best_count) continue;
    if (plan.can_insert(o)) {
      best = o;
      best_count = count;
    }
  }
  return best;
}

// Larger is better.
std::pair<double, double> rule_key(const PlanState& plan, GreedyRule rule) {
  const double profit = static_cast<double>(plan.profit_sum());
  switch (rule) {
    case GreedyRule::kTP: return {profit, 0};
    case GreedyRule::kTCR: return {static_cast<double>(plan.scheduled_count()), profit};
    case GreedyRule::kTM: {
      const int n = plan.index().task_count();
      const double tm = n > 0 ? (plan.start_fraction_sum() + (n - plan.scheduled_count())) / n : 1.0;
      return {-tm, profit};
    }
    case GreedyRule::kBD: return {balance_degree(plan.sat_counts()).value_or(-1.0), profit};
  }
  return {profit, 0};
}

}  // namespace

SolveResult greedy(const InstanceIndex& index, GreedyRule rule, std::uint64_t seed, int restarts) {
  if (restarts < 1) throw DomainError("greedy needs at least one restart");
  const Objective objective = rule == GreedyRule::kTP    ? Objective::kTP
                              : rule == GreedyRule::kTCR ? Objective::kTCR
                                                         : Objective::kAll;
  Rng rng(mix_seed({seed, 0x6e3dU, static_cast<std::uint64_t>(rule)}));
  const std::vector<int> tasks = detail::schedulable_tasks(index);

  std::vector<double> key(index.task_count(), 0.0);
  if (rule == GreedyRule::kTCR) {
    // Fewer windows first, then fewer opportunities.
    const std::vector<int> counts = window_counts(index);
    const double scale = static_cast<double>(index.opp_count()) + 1.0;
    for (int t = 0; t < index.task_count(); ++t) {
      key[t] = counts[t] * scale + static_cast<double>(index.task_opps(t).size());
    }
  } else if (rule == GreedyRule::kTM) {
    for (int t : tasks) key[t] = index.opp(index.task_opps(t).front()).start;
  }

  PlanState plan(index);
  std::vector<int> best_opps;
  std::pair<double, double> best_key{};
  detail::Tracker tracker;
  for (int r = 0; r < restarts; ++r) {
    std::vector<int> order;
    if (rule == GreedyRule::kTP) {
      order = tasks;
      rng.shuffle(order);
    } else {
      order = ordered(tasks, key, rng, r == 0);
    }
    plan.clear();
    for (int t : order) {
      const int o = rule == GreedyRule::kBD ? least_loaded_choice(plan, t) : first_feasible(plan, t);
      if (o >= 0) plan.insert(o);
    }
    const auto k = rule_key(plan, rule);
    if (r == 0 || k > best_key) {
      best_key = k;
      best_opps = plan.assigned_opps();
    }
  }
  detail::rebuild(plan, best_opps);
  tracker.offer(restarts, objective_value(plan, objective));
  return detail::finish(plan, objective, true, tracker);
}

}  // namespace eosb
