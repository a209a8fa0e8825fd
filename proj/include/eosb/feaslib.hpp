// Feasibility model: compatibility, resource ledger, schedule validation.
#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "eosb/core.hpp"

namespace eosb {

enum class ConflictReason { kOk, kSameTask, kTemporalOverlap, kTransitionViolation };

std::string_view to_string(ConflictReason r);

struct CompatibilityVerdict {
  bool compatible = true;
  ConflictReason reason = ConflictReason::kOk;
};

struct LedgerSegment {
  double start_s = 0;
  double end_s = 0;
  double energy_used = 0;
  double memory_used = 0;
};

// Per satellite, one entry per orbit-length slice of the horizon.
struct ResourceLedger {
  std::vector<std::string> satellite_ids;
  std::vector<std::vector<LedgerSegment>> segments;
};

enum class ViolationKind { kCompatibility, kTaskUniqueness, kEnergy, kMemory };

struct FeasibilityViolation {
  ViolationKind kind;
  std::string witness;
};

struct FeasibilityReport {
  bool pass = true;
  std::vector<FeasibilityViolation> violations;
  ResourceLedger ledger;
};

// Describes the resource accounting conventions; written into reports.
extern const char* const kLedgerConventions;

std::vector<Assignment> candidate_assignments(const Instance& instance);
CompatibilityVerdict compatible(const Assignment& a, const Assignment& b, const Instance& instance);
ResourceLedger resource_usage(const Schedule& schedule, const Instance& instance);
// Throws StructuralError for unknown ids or malformed assignments.
FeasibilityReport validate_schedule(const Schedule& schedule, const Instance& instance);
std::string feasibility_report_json(const FeasibilityReport& report);

// Dense, index-based view of an instance used by the validator, the
// descriptors and every solver.
class InstanceIndex {
 public:
  struct Opp {
    int sat = 0;
    int task = 0;
    double start = 0;
    double end = 0;
    LookAngles start_att;
    LookAngles end_att;
  };

  explicit InstanceIndex(const Instance& instance);

  const Instance& instance() const { return *inst_; }
  int satellite_count() const { return static_cast<int>(inst_->satellites.size()); }
  int task_count() const { return static_cast<int>(inst_->tasks.size()); }
  int opp_count() const { return static_cast<int>(opps_.size()); }
  const Opp& opp(int o) const { return opps_[o]; }
  // Opportunities of a task, sorted by (start, satellite order, index).
  std::span<const int> task_opps(int task) const;
  // Opportunities on a satellite, sorted by (start, index).
  std::span<const int> sat_opps(int sat) const;

  int satellite_index(const std::string& id) const;  // -1 if unknown
  int task_index(const std::string& id) const;       // -1 if unknown

  // Required gap between the end of `first` and the start of `second`.
  double separation(int first, int second) const;
  double max_transition_s() const { return max_transition_; }
  double max_duration_s() const { return max_duration_; }
  CompatibilityVerdict compatible(int a, int b) const;

  double period_s(int sat) const { return period_[sat]; }
  int segment_count(int sat) const { return segments_[sat]; }
  int segment_of(int sat, double t) const;
  double horizon_s() const { return inst_->horizon_s; }
  int profit(int task) const { return inst_->tasks[task].profit; }
  long long total_profit() const { return total_profit_; }

  Assignment to_assignment(int o) const;

 private:
  const Instance* inst_;
  std::vector<Opp> opps_;
  std::vector<std::vector<int>> task_opps_;
  std::vector<std::vector<int>> sat_opps_;
  std::unordered_map<std::string, int> sat_ids_;
  std::unordered_map<std::string, int> task_ids_;
  std::vector<double> period_;
  std::vector<int> segments_;
  double max_transition_ = 0;
  double max_duration_ = 0;
  long long total_profit_ = 0;
};

// Energy charged for an observation given the attitude before it.
double observation_energy(const InstanceIndex& index, int opp, const LookAngles& before);

// Incrementally maintained feasible plan. Insertions are checked against
// neighbouring assignments and the segment ledger.
class PlanState {
 public:
  explicit PlanState(const InstanceIndex& index);

  const InstanceIndex& index() const { return *index_; }
  bool can_insert(int opp) const;
  void insert(int opp);  // precondition: can_insert(opp)
  void remove_task(int task);
  void clear();

  int assigned_opp(int task) const { return task_opp_[task]; }
  bool is_assigned(int task) const { return task_opp_[task] >= 0; }
  int scheduled_count() const { return count_; }
  long long profit_sum() const { return profit_; }
  // Sum over scheduled tasks of start / horizon.
  double start_fraction_sum() const { return start_frac_; }
  const std::vector<int>& sat_counts() const { return sat_count_; }
  const std::vector<int>& timeline(int sat) const { return timeline_[sat]; }
  std::vector<int> assigned_opps() const;  // sorted by task index

  Schedule to_schedule(const std::string& solver) const;

 private:
  // Energy delta of inserting `opp` at position `pos` of its timeline.
  double energy_delta(int sat, int seg, std::size_t pos, int opp) const;
  bool conflicts_with_neighbours(int sat, std::size_t pos, int opp) const;
  std::size_t position(int sat, int opp) const;

  const InstanceIndex* index_;
  std::vector<int> task_opp_;
  std::vector<std::vector<int>> timeline_;  // opp ids sorted by (start, id)
  std::vector<std::vector<double>> energy_;
  std::vector<std::vector<double>> memory_;
  std::vector<int> sat_count_;
  int count_ = 0;
  long long profit_ = 0;
  double start_frac_ = 0;
};

}  // namespace eosb
