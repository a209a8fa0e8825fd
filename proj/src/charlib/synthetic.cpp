#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "eosb/astro.hpp"
#include "eosb/charlib.hpp"
#include "eosb/kinematics.hpp"

namespace eosb {

SatelliteSpec synthetic_satellite(const std::string& id) {
  SatelliteSpec s;
  s.id = id;
  s.elements.semi_major_axis_km = 7013.62362;
  s.envelope = AttitudeEnvelope::agile();
  s.agility = agility_profile(AgilityName::kStandard);
  return s;
}

Instance build_synthetic_instance(const SyntheticSpec& spec) {
  std::unordered_set<std::string> sat_ids, task_ids;
  for (const SatelliteSpec& s : spec.satellites) {
    if (!sat_ids.insert(s.id).second) throw DomainError("duplicate satellite id '" + s.id + "'");
  }
  std::unordered_map<std::string, int> duration;
  for (const SyntheticTask& t : spec.tasks) {
    if (!task_ids.insert(t.id).second) throw DomainError("duplicate task id '" + t.id + "'");
    if (t.duration_s < 1) throw DomainError("task '" + t.id + "' needs a positive duration");
    duration[t.id] = t.duration_s;
  }
  if (spec.transition_s && *spec.transition_s < 0) throw DomainError("negative transition time");
  if (!(spec.slot_step_s > 0)) throw DomainError("slot step must be positive");

  // Without an explicit horizon, the latest window end (or 1 s) is used.
  double horizon = spec.horizon_s;
  if (!(horizon > 0)) {
    horizon = 1.0;
    for (const SyntheticWindow& w : spec.windows) horizon = std::max(horizon, w.end_s);
  }

  Instance inst;
  inst.id = spec.id;
  inst.kind = InstanceKind::kSynthetic;
  inst.horizon_s = horizon;
  inst.slot_step_s = spec.slot_step_s;
  inst.fixed_transition_s = spec.transition_s;
  inst.satellites = spec.satellites;
  if (!inst.satellites.empty()) inst.platform = inst.satellites.front().envelope.platform;
  inst.provenance.scenario_id = spec.id;
  inst.provenance.note = "synthetic";
  for (const SyntheticTask& t : spec.tasks) {
    TaskSpec ts;
    ts.id = t.id;
    ts.duration_s = t.duration_s;
    ts.profit = t.profit;
    ts.priority = t.priority;
    inst.tasks.push_back(ts);
  }
  for (const SyntheticWindow& w : spec.windows) {
    if (!sat_ids.count(w.satellite_id)) throw DomainError("window on unknown satellite '" + w.satellite_id + "'");
    if (!task_ids.count(w.task_id)) throw DomainError("window for unknown task '" + w.task_id + "'");
    if (!(w.start_s >= 0 && w.start_s < w.end_s && w.end_s <= horizon)) {
      throw DomainError("window for task '" + w.task_id + "' is outside [0, horizon] or empty");
    }
    VisibleWindow vw;
    vw.task_id = w.task_id;
    vw.satellite_id = w.satellite_id;
    vw.start_s = w.start_s;
    vw.end_s = w.end_s;
    vw.attitude_track = w.attitude_track;
    const std::size_t wi = inst.visible_windows.size();
    inst.visible_windows.push_back(vw);
    for (AvailableOpportunity& o :
         derive_opportunities(inst.visible_windows.back(), duration[w.task_id], spec.slot_step_s, wi)) {
      inst.opportunities.push_back(std::move(o));
    }
  }
  return inst;
}

}  // namespace eosb
