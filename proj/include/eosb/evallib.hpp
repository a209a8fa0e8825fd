// Five-metric evaluation of validated schedules.
#pragma once

#include <optional>
#include <string>

#include "eosb/core.hpp"
#include "eosb/feaslib.hpp"

namespace eosb {

struct MetricReport {
  double tp = 0;
  double tcr = 0;
  std::optional<double> bd;  // undefined when no task is executed
  double tm = 1;
  double rt_s = 0;
  double composite_all = 0;
};

// Refuses infeasible schedules with InfeasibleScheduleError.
MetricReport evaluate(const Schedule& schedule, const Instance& instance, double wall_time_s);
double composite_score(const MetricReport& report, const Instance& instance);

// Metrics of an already-feasible selection, one entry per scheduled task.
struct ScheduledTask {
  int task;
  int sat;
  double start_s;
};
MetricReport metrics_of(const std::vector<ScheduledTask>& done, const Instance& instance);

// Balance degree from per-satellite counts (zeros ignored).
std::optional<double> balance_degree(const std::vector<int>& counts_per_satellite);

std::string metric_report_json(const MetricReport& report);

}  // namespace eosb
