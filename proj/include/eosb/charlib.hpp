// Structural difficulty descriptors computed before optimisation.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eosb/core.hpp"

namespace eosb {

enum class DescriptorLevel { kInstance, kScenario };

struct TaskDescriptors {
  double gamma_ao = 0;  // mean available opportunities per task
  double gamma_oc = 0;  // share of tasks with at most two opportunities
  double gamma_ti = 0;  // share of task pairs with any conflicting opportunity pair
  double gamma_at = 0;  // mean conflict ratio over comparable task pairs
  double gamma_te = 0;  // mean (satellites x windows) per task
  bool degenerate = false;  // fewer than two tasks
};

struct SatelliteDescriptors {
  double lambda_oc = 0;  // pairwise contention over active time
  double lambda_cs = 0;  // share of satellites with a conflict step
  double lambda_to = 0;  // conflict-segment time over total satellite time
  double lambda_ac = 0;  // mean depth of conflict steps
  double lambda_ed = 0;  // depth-weighted excess demand
};

struct DescriptorReport {
  std::string id;  // instance id or scenario id
  DescriptorLevel level = DescriptorLevel::kInstance;
  double analysis_step_s = 1;
  int instance_count = 1;
  bool degenerate = false;
  double gamma_ao = 0, gamma_oc = 0, gamma_ti = 0, gamma_at = 0, gamma_te = 0;
  double lambda_oc = 0, lambda_cs = 0, lambda_to = 0, lambda_ac = 0, lambda_ed = 0;
};

TaskDescriptors task_descriptors(const Instance& instance);
SatelliteDescriptors satellite_descriptors(const Instance& instance, double step_s);
// 1 s up to 200 tasks, 10 s above.
double default_analysis_step(const Instance& instance);
DescriptorReport characterise(const Instance& instance, std::optional<double> step_s = {});
// Field-wise mean; throws DomainError on empty input or mixed steps.
DescriptorReport aggregate(std::span<const DescriptorReport> reports, const std::string& scenario_id = {});

std::string descriptor_report_json(const DescriptorReport& report);
DescriptorReport parse_descriptor_report(std::string_view bytes);

// Instances assembled from injected windows, bypassing orbit geometry.
struct SyntheticTask {
  std::string id;
  int duration_s = 1;
  int profit = 1;
  int priority = 1;
};

struct SyntheticWindow {
  std::string task_id;
  std::string satellite_id;
  double start_s = 0;
  double end_s = 0;
  std::vector<AttitudeSample> attitude_track;  // optional; nadir when empty
};

struct SyntheticSpec {
  std::string id = "synthetic";
  double horizon_s = 0;
  std::vector<SatelliteSpec> satellites;
  std::vector<SyntheticTask> tasks;
  std::vector<SyntheticWindow> windows;
  // Constant transition time; unset means each satellite's platform rule.
  std::optional<double> transition_s;
  double slot_step_s = 1;
};

// Default agile satellite usable in synthetic instances.
SatelliteSpec synthetic_satellite(const std::string& id);
Instance build_synthetic_instance(const SyntheticSpec& spec);

}  // namespace eosb
