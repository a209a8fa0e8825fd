#include "eosb/evallib.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace eosb {

std::optional<double> balance_degree(const std::vector<int>& counts) {
  std::vector<double> active;
  for (int c : counts) {
    if (c > 0) active.push_back(c);
  }
  if (active.empty()) return std::nullopt;
  if (active.size() == 1) return 1.0;
  double mean = 0;
  for (double c : active) mean += c;
  mean /= static_cast<double>(active.size());
  double ss = 0;
  for (double c : active) ss += (c - mean) * (c - mean);
  const double sd = std::sqrt(ss / static_cast<double>(active.size() - 1));
  return 1.0 - sd / mean;
}

double composite_score(const MetricReport& r, const Instance& inst) {
  double total = 0;
  for (const TaskSpec& t : inst.tasks) total += t.profit;
  const double tp_term = total > 0 ? r.tp / total : 0.0;
  const double bd_term = r.bd ? std::clamp(*r.bd, 0.0, 1.0) : 0.0;
  return (tp_term + r.tcr + bd_term + (1.0 - r.tm)) / 4.0;
}

MetricReport metrics_of(const std::vector<ScheduledTask>& done, const Instance& inst) {
  MetricReport r;
  const std::size_t n = inst.tasks.size();
  std::vector<int> counts(inst.satellites.size(), 0);
  double start_sum = 0;
  for (const ScheduledTask& d : done) {
    r.tp += inst.tasks[d.task].profit;
    ++counts[d.sat];
    start_sum += d.start_s;
  }
  if (n > 0) {
    r.tcr = static_cast<double>(done.size()) / static_cast<double>(n);
    const double h = inst.horizon_s;
    r.tm = (start_sum + h * static_cast<double>(n - done.size())) / (h * static_cast<double>(n));
  } else {
    r.tcr = 0;
    r.tm = 1;
  }
  r.bd = balance_degree(counts);
  r.composite_all = composite_score(r, inst);
  return r;
}

MetricReport evaluate(const Schedule& schedule, const Instance& inst, double wall_time_s) {
  const FeasibilityReport rep = validate_schedule(schedule, inst);
  if (!rep.pass) {
    throw InfeasibleScheduleError("schedule fails validation: " + rep.violations.front().witness);
  }
  const InstanceIndex index(inst);
  std::vector<ScheduledTask> done;
  for (const Assignment& a : schedule.assignments) {
    done.push_back({index.task_index(a.task_id), index.satellite_index(a.satellite_id), a.start_s});
  }
  MetricReport r = metrics_of(done, inst);
  r.rt_s = wall_time_s;
  return r;
}

std::string metric_report_json(const MetricReport& r) {
  nlohmann::json j = {{"tp", r.tp},
                      {"tcr", r.tcr},
                      {"bd", r.bd ? nlohmann::json(*r.bd) : nlohmann::json(nullptr)},
                      {"tm", r.tm},
                      {"rt_s", r.rt_s},
                      {"composite_all", r.composite_all}};
  return j.dump(1) + "\n";
}

}  // namespace eosb
