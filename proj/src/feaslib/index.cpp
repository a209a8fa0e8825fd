#include <algorithm>
#include <cmath>

#include "eosb/feaslib.hpp"
#include "eosb/kinematics.hpp"

namespace eosb {

std::string_view to_string(ConflictReason r) {
  switch (r) {
    case ConflictReason::kOk: return "ok";
    case ConflictReason::kSameTask: return "same_task";
    case ConflictReason::kTemporalOverlap: return "temporal_overlap";
    case ConflictReason::kTransitionViolation: return "transition_violation";
  }
  return "ok";
}

InstanceIndex::InstanceIndex(const Instance& inst) : inst_(&inst) {
  const int n_sat = static_cast<int>(inst.satellites.size());
  for (int s = 0; s < n_sat; ++s) sat_ids_.emplace(inst.satellites[s].id, s);
  for (int t = 0; t < static_cast<int>(inst.tasks.size()); ++t) {
    task_ids_.emplace(inst.tasks[t].id, t);
    total_profit_ += inst.tasks[t].profit;
  }
  opps_.reserve(inst.opportunities.size());
  task_opps_.assign(inst.tasks.size(), {});
  sat_opps_.assign(inst.satellites.size(), {});
  struct Range {
    double lo[3] = {1e300, 1e300, 1e300};
    double hi[3] = {-1e300, -1e300, -1e300};
    void add(const LookAngles& a) {
      const double v[3] = {a.roll_deg, a.pitch_deg, a.yaw_deg};
      for (int k = 0; k < 3; ++k) {
        lo[k] = std::min(lo[k], v[k]);
        hi[k] = std::max(hi[k], v[k]);
      }
    }
    double span() const {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += hi[k] > lo[k] ? hi[k] - lo[k] : 0.0;
      return s;
    }
  };
  std::vector<Range> ranges(inst.satellites.size());
  for (std::size_t k = 0; k < inst.opportunities.size(); ++k) {
    const AvailableOpportunity& a = inst.opportunities[k];
    auto s = sat_ids_.find(a.satellite_id);
    auto t = task_ids_.find(a.task_id);
    if (s == sat_ids_.end() || t == task_ids_.end() || a.window_index >= inst.visible_windows.size()) {
      throw StructuralError("opportunity " + std::to_string(k) + " references unknown entities");
    }
    const VisibleWindow& w = inst.visible_windows[a.window_index];
    Opp o{s->second, t->second, a.start_s, a.end_s, attitude_at(w, a.start_s), attitude_at(w, a.end_s)};
    ranges[o.sat].add(o.start_att);
    ranges[o.sat].add(o.end_att);
    max_duration_ = std::max(max_duration_, o.end - o.start);
    opps_.push_back(o);
    task_opps_[o.task].push_back(static_cast<int>(k));
    sat_opps_[o.sat].push_back(static_cast<int>(k));
  }
  for (auto& v : task_opps_) {
    std::sort(v.begin(), v.end(), [&](int a, int b) {
      const Opp &x = opps_[a], &y = opps_[b];
      if (x.start != y.start) return x.start < y.start;
      if (x.sat != y.sat) return x.sat < y.sat;
      return a < b;
    });
  }
  for (auto& v : sat_opps_) {
    std::sort(v.begin(), v.end(), [&](int a, int b) {
      if (opps_[a].start != opps_[b].start) return opps_[a].start < opps_[b].start;
      return a < b;
    });
  }
  period_.resize(inst.satellites.size());
  segments_.resize(inst.satellites.size());
  for (int s = 0; s < n_sat; ++s) {
    const SatelliteSpec& sat = inst.satellites[s];
    period_[s] = orbital_period_s(sat.elements);
    segments_[s] = inst.horizon_s > 0
                       ? std::max(1, static_cast<int>(std::ceil(inst.horizon_s / period_[s] - 1e-12)))
                       : 0;
    double trans;
    if (inst.fixed_transition_s) {
      trans = *inst.fixed_transition_s;
    } else if (sat.envelope.platform == Platform::kNonAgile) {
      trans = kNonAgileTransitionS;
    } else {
      trans = transition_time(ranges[s].span(), sat.agility);
    }
    max_transition_ = std::max(max_transition_, trans);
  }
}

std::span<const int> InstanceIndex::task_opps(int task) const { return task_opps_[task]; }
std::span<const int> InstanceIndex::sat_opps(int sat) const { return sat_opps_[sat]; }

int InstanceIndex::satellite_index(const std::string& id) const {
  auto it = sat_ids_.find(id);
  return it == sat_ids_.end() ? -1 : it->second;
}

int InstanceIndex::task_index(const std::string& id) const {
  auto it = task_ids_.find(id);
  return it == task_ids_.end() ? -1 : it->second;
}

double InstanceIndex::separation(int first, int second) const {
  if (inst_->fixed_transition_s) return *inst_->fixed_transition_s;
  const SatelliteSpec& sat = inst_->satellites[opps_[first].sat];
  if (sat.envelope.platform == Platform::kNonAgile) return kNonAgileTransitionS;
  return transition_time(delta_g(opps_[first].end_att, opps_[second].start_att), sat.agility);
}

CompatibilityVerdict InstanceIndex::compatible(int a, int b) const {
  const Opp &x = opps_[a], &y = opps_[b];
  if (x.task == y.task) return {false, ConflictReason::kSameTask};
  if (x.sat != y.sat) return {true, ConflictReason::kOk};
  // Closed intervals: touching endpoints count as overlap.
  if (x.start <= y.end && y.start <= x.end) return {false, ConflictReason::kTemporalOverlap};
  const bool x_first = x.end < y.start;
  const int first = x_first ? a : b, second = x_first ? b : a;
  const double gap = opps_[second].start - opps_[first].end;
  if (gap < separation(first, second)) return {false, ConflictReason::kTransitionViolation};
  return {true, ConflictReason::kOk};
}

int InstanceIndex::segment_of(int sat, double t) const {
  const int n = segments_[sat];
  if (n <= 1) return 0;
  const int k = static_cast<int>(std::floor(t / period_[sat]));
  return std::clamp(k, 0, n - 1);
}

Assignment InstanceIndex::to_assignment(int o) const {
  const Opp& x = opps_[o];
  return {inst_->satellites[x.sat].id, inst_->tasks[x.task].id, static_cast<std::size_t>(o), x.start};
}

double observation_energy(const InstanceIndex& index, int opp, const LookAngles& before) {
  const InstanceIndex::Opp& o = index.opp(opp);
  const PayloadRates& r = index.instance().satellites[o.sat].rates;
  return (o.end - o.start) * r.obs_energy_rate +
         (delta_g(before, o.start_att) + delta_g(o.start_att, o.end_att)) * r.slew_energy_rate;
}

}  // namespace eosb
