// Depth-first branch-and-bound over the discrete-window binary model. Each
// level decides one task: one of its opportunities, or none.
#include <algorithm>

#include "common.hpp"

namespace eosb {
namespace {

constexpr double kEps = 1e-12;

class BranchAndBound {
 public:
  BranchAndBound(const InstanceIndex& index, Objective objective, const SolverConfig& config)
      : index_(index),
        objective_(objective),
        plan_(index),
        deadline_(config.time_limit_s),
        node_limit_(config.bb_node_limit) {
    order_ = detail::schedulable_tasks(index);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      if (index.profit(a) != index.profit(b)) return index.profit(a) > index.profit(b);
      return index.task_opps(a).size() < index.task_opps(b).size();
    });
    const int n = index.task_count();
    const std::size_t m = order_.size();
    suffix_profit_.assign(m + 1, 0.0);
    suffix_min_frac_.assign(m + 1, 0.0);
    for (std::size_t i = m; i-- > 0;) {
      const int t = order_[i];
      double earliest = 1.0;
      for (int o : index.task_opps(t)) earliest = std::min(earliest, index.opp(o).start / index.horizon_s());
      suffix_profit_[i] = suffix_profit_[i + 1] + index.profit(t);
      suffix_min_frac_[i] = suffix_min_frac_[i + 1] + earliest;
    }
    unschedulable_ = n - static_cast<int>(m);
  }

  SolveResult run(const std::vector<int>& warm_start) {
    detail::rebuild(plan_, warm_start);
    best_value_ = objective_value(plan_, objective_);
    best_opps_ = plan_.assigned_opps();
    tracker_.offer(0, best_value_);
    plan_.clear();
    skipped_ = 0;
    dfs(0);
    detail::rebuild(plan_, best_opps_);
    return detail::finish(plan_, objective_, !aborted_, tracker_);
  }

 private:
  // Admissible upper bound on any completion of the current node.
  double bound(std::size_t depth) const {
    const int n = index_.task_count();
    const int undecided = static_cast<int>(order_.size() - depth);
    switch (objective_) {
      case Objective::kTP: return plan_.profit_sum() + suffix_profit_[depth];
      case Objective::kTCR: return static_cast<double>(plan_.scheduled_count() + undecided) / n;
      case Objective::kAll: {
        const double total = static_cast<double>(index_.total_profit());
        const double tp = (plan_.profit_sum() + suffix_profit_[depth]) / total;
        const double tcr = static_cast<double>(plan_.scheduled_count() + undecided) / n;
        const double tm_lb =
            (plan_.start_fraction_sum() + suffix_min_frac_[depth] + skipped_ + unschedulable_) / n;
        return (tp + tcr + 1.0 + 1.0 - tm_lb) / 4.0;
      }
    }
    return 0.0;
  }

  void dfs(std::size_t depth) {
    if (aborted_) return;
    if (++nodes_ > node_limit_ || deadline_.expired()) {
      aborted_ = true;
      return;
    }
    if (depth == order_.size()) {
      const double v = objective_value(plan_, objective_);
      if (v > best_value_ + kEps) {
        best_value_ = v;
        best_opps_ = plan_.assigned_opps();
        tracker_.offer(nodes_, v);
      }
      return;
    }
    if (bound(depth) <= best_value_ + kEps) return;
    const int task = order_[depth];
    for (int o : index_.task_opps(task)) {
      if (!plan_.can_insert(o)) continue;
      plan_.insert(o);
      dfs(depth + 1);
      plan_.remove_task(task);
      if (aborted_) return;
    }
    ++skipped_;
    dfs(depth + 1);
    --skipped_;
  }

  const InstanceIndex& index_;
  Objective objective_;
  PlanState plan_;
  detail::Deadline deadline_;
  long long node_limit_;
  std::vector<int> order_;
  std::vector<double> suffix_profit_;
  std::vector<double> suffix_min_frac_;
  int unschedulable_ = 0;
  int skipped_ = 0;
  long long nodes_ = 0;
  bool aborted_ = false;
  double best_value_ = 0;
  std::vector<int> best_opps_;
  detail::Tracker tracker_;
};

}  // namespace

SolveResult exact_branch_and_bound(const InstanceIndex& index, Objective objective,
                                   const SolverConfig& config) {
  if (index.task_count() == 0) {
    PlanState empty(index);
    detail::Tracker tracker;
    return detail::finish(empty, objective, true, tracker);
  }
  // Warm start from the best single-pass greedy plan under this objective.
  std::vector<int> warm;
  double warm_value = -1;
  PlanState scratch(index);
  for (GreedyRule rule : {GreedyRule::kTP, GreedyRule::kTCR, GreedyRule::kTM, GreedyRule::kBD}) {
    const SolveResult g = greedy(index, rule, config.seed, 1);
    std::vector<int> opps;
    for (const Assignment& a : g.schedule.assignments) opps.push_back(static_cast<int>(a.opportunity));
    detail::rebuild(scratch, opps);
    const double v = objective_value(scratch, objective);
    if (v > warm_value + kEps) {
      warm_value = v;
      warm = scratch.assigned_opps();
    }
  }
  BranchAndBound bb(index, objective, config);
  return bb.run(warm);
}

}  // namespace eosb
