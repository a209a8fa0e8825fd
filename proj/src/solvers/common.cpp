#include "common.hpp"

#include <algorithm>

#include "eosb/evallib.hpp"

namespace eosb {

std::string_view to_string(SolverKind k) {
  switch (k) {
    case SolverKind::kExactBB: return "exact";
    case SolverKind::kGreedyTP: return "greedy_tp";
    case SolverKind::kGreedyTCR: return "greedy_tcr";
    case SolverKind::kGreedyTM: return "greedy_tm";
    case SolverKind::kGreedyBD: return "greedy_bd";
    case SolverKind::kSA: return "sa";
    case SolverKind::kGA: return "ga";
    case SolverKind::kACO: return "aco";
  }
  return "greedy_tp";
}

std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::kTP: return "tp";
    case Objective::kTCR: return "tcr";
    case Objective::kAll: return "all";
  }
  return "tp";
}

SolverKind parse_solver_kind(std::string_view s) {
  for (SolverKind k : {SolverKind::kExactBB, SolverKind::kGreedyTP, SolverKind::kGreedyTCR,
                       SolverKind::kGreedyTM, SolverKind::kGreedyBD, SolverKind::kSA, SolverKind::kGA,
                       SolverKind::kACO}) {
    if (to_string(k) == s) return k;
  }
  if (s == "mip" || s == "bb") return SolverKind::kExactBB;
  throw DomainError("unknown solver '" + std::string(s) + "'");
}

Objective parse_objective(std::string_view s) {
  for (Objective o : {Objective::kTP, Objective::kTCR, Objective::kAll}) {
    if (to_string(o) == s) return o;
  }
  throw DomainError("unknown objective '" + std::string(s) + "'");
}

Objective implied_objective(const SolverConfig& c) {
  switch (c.solver) {
    case SolverKind::kGreedyTP: return Objective::kTP;
    case SolverKind::kGreedyTCR: return Objective::kTCR;
    case SolverKind::kGreedyTM:
    case SolverKind::kGreedyBD: return Objective::kAll;
    default: return c.objective;
  }
}

std::string solver_tag(const SolverConfig& c) {
  std::string base(to_string(c.solver));
  switch (c.solver) {
    case SolverKind::kGreedyTP:
    case SolverKind::kGreedyTCR:
    case SolverKind::kGreedyTM:
    case SolverKind::kGreedyBD:
      return base;
    default:
      return base + "_" + std::string(to_string(c.objective));
  }
}

double objective_value(const PlanState& plan, Objective objective) {
  const InstanceIndex& index = plan.index();
  const int n = index.task_count();
  switch (objective) {
    case Objective::kTP: return static_cast<double>(plan.profit_sum());
    case Objective::kTCR: return n > 0 ? static_cast<double>(plan.scheduled_count()) / n : 0.0;
    case Objective::kAll: {
      if (n == 0) return 0.0;
      const double total = static_cast<double>(index.total_profit());
      const double tp = total > 0 ? plan.profit_sum() / total : 0.0;
      const double tcr = static_cast<double>(plan.scheduled_count()) / n;
      const std::optional<double> bd = balance_degree(plan.sat_counts());
      const double tm = (plan.start_fraction_sum() + (n - plan.scheduled_count())) / n;
      return (tp + tcr + (bd ? std::clamp(*bd, 0.0, 1.0) : 0.0) + 1.0 - tm) / 4.0;
    }
  }
  return 0.0;
}

double search_score(const PlanState& plan, Objective objective) {
  const double v = objective_value(plan, objective);
  if (objective == Objective::kTP) return v;
  return v * static_cast<double>(std::max<long long>(1, plan.index().total_profit()));
}

namespace detail {

int first_feasible(const PlanState& plan, int task) {
  for (int o : plan.index().task_opps(task)) {
    if (plan.can_insert(o)) return o;
  }
  return -1;
}

void rebuild(PlanState& plan, const std::vector<int>& opps) {
  plan.clear();
  for (int o : opps) {
    if (o >= 0 && plan.can_insert(o)) plan.insert(o);
  }
}

void greedy_fill(PlanState& plan, const std::vector<int>& order) {
  for (int t : order) {
    if (plan.is_assigned(t)) continue;
    const int o = first_feasible(plan, t);
    if (o >= 0) plan.insert(o);
  }
}

std::vector<int> schedulable_tasks(const InstanceIndex& index) {
  std::vector<int> out;
  for (int t = 0; t < index.task_count(); ++t) {
    if (!index.task_opps(t).empty()) out.push_back(t);
  }
  return out;
}

SolveResult finish(const PlanState& plan, Objective objective, bool complete, Tracker& tracker) {
  SolveResult r;
  r.schedule = plan.to_schedule("");
  r.schedule.search_complete = complete;
  r.objective = objective_value(plan, objective);
  r.complete = complete;
  r.trace = tracker.take();
  return r;
}

}  // namespace detail
}  // namespace eosb
