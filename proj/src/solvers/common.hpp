// Shared helpers for the solver implementations.
#pragma once

#include <chrono>
#include <vector>

#include "eosb/random.hpp"
#include "eosb/solvers.hpp"

namespace eosb::detail {

class Deadline {
 public:
  explicit Deadline(double limit_s)
      : end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(limit_s > 0 ? limit_s : 0.0))) {}
  bool expired() {
    if (++calls_ % 64 != 0 && !hit_) return false;
    if (!hit_ && std::chrono::steady_clock::now() >= end_) hit_ = true;
    return hit_;
  }
  bool hit() const { return hit_; }

 private:
  std::chrono::steady_clock::time_point end_;
  long long calls_ = 0;
  bool hit_ = false;
};

// Records incumbent improvements.
class Tracker {
 public:
  void offer(long long step, double objective) {
    if (trace_.empty() || objective > trace_.back().objective + 1e-12) trace_.push_back({step, objective});
  }
  std::vector<TracePoint> take() { return std::move(trace_); }

 private:
  std::vector<TracePoint> trace_;
};

// Earliest insertable opportunity of a task, or -1.
int first_feasible(const PlanState& plan, int task);

// Inserts the given opportunities in order, skipping any that no longer fit.
void rebuild(PlanState& plan, const std::vector<int>& opps);

// Tries every unassigned task in `order` at its earliest feasible opportunity.
void greedy_fill(PlanState& plan, const std::vector<int>& order);

// Tasks that have at least one opportunity, in index order.
std::vector<int> schedulable_tasks(const InstanceIndex& index);

SolveResult finish(const PlanState& plan, Objective objective, bool complete, Tracker& tracker);

}  // namespace eosb::detail
