#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "eosb/core.hpp"

namespace eosb {
namespace {

constexpr double kTol = 1e-9;

class Collector {
 public:
  explicit Collector(ValidationReport& out) : out_(out) {}
  void check(bool ok, const std::string& entity, const char* rule, std::string detail = {}) {
    if (!ok) out_.push_back({entity, rule, std::move(detail)});
  }

 private:
  ValidationReport& out_;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

bool angle_ok(double deg) { return std::isfinite(deg) && deg >= 0.0 && deg < 360.0; }

void check_satellite(const SatelliteSpec& s, Collector& c) {
  const std::string e = "satellite " + s.id;
  const OrbitalElements& o = s.elements;
  c.check(!s.id.empty(), e, "id-nonempty");
  c.check(o.semi_major_axis_km > kEarthRadiusKm, e, "semi-major-axis-above-earth-radius",
          num(o.semi_major_axis_km));
  c.check(o.eccentricity >= 0.0 && o.eccentricity < 1.0, e, "eccentricity-range",
          num(o.eccentricity));
  c.check(o.semi_major_axis_km * (1.0 - o.eccentricity) > kEarthRadiusKm, e,
          "perigee-above-earth-radius");
  c.check(o.inclination_deg >= 0.0 && o.inclination_deg <= 180.0, e, "inclination-range",
          num(o.inclination_deg));
  c.check(angle_ok(o.raan_deg), e, "raan-normalised", num(o.raan_deg));
  c.check(angle_ok(o.arg_perigee_deg), e, "arg-perigee-normalised", num(o.arg_perigee_deg));
  c.check(angle_ok(o.true_anomaly_deg), e, "true-anomaly-normalised", num(o.true_anomaly_deg));
  const AttitudeEnvelope& env = s.envelope;
  c.check(env.max_roll_deg >= 0 && env.max_pitch_deg >= 0 && env.max_yaw_deg >= 0, e,
          "envelope-nonnegative");
  if (env.platform == Platform::kNonAgile) {
    c.check(env.max_pitch_deg == 0.0 && env.max_yaw_deg == 0.0, e, "non-agile-roll-only");
  }
  c.check(s.capacities.energy_per_orbit > 0, e, "energy-capacity-positive");
  c.check(s.capacities.storage_per_orbit > 0, e, "storage-capacity-positive");
  c.check(s.rates.obs_energy_rate >= 0 && s.rates.obs_memory_rate >= 0 &&
              s.rates.slew_energy_rate >= 0,
          e, "rates-nonnegative");
  for (int k = 0; k < 4; ++k) {
    c.check(s.agility.velocity_deg_s[k] > 0, e, "agility-velocity-positive");
    c.check(std::isfinite(s.agility.offset_s[k]), e, "agility-offset-finite");
  }
}

void check_task(const TaskSpec& t, InstanceKind kind, Collector& c) {
  const std::string e = "task " + t.id;
  c.check(!t.id.empty(), e, "id-nonempty");
  c.check(t.lat_deg >= -90.0 && t.lat_deg <= 90.0, e, "latitude-range", num(t.lat_deg));
  c.check(t.lon_deg > -180.0 && t.lon_deg <= 180.0, e, "longitude-range", num(t.lon_deg));
  c.check(t.priority >= 1 && t.priority <= 10, e, "priority-range", std::to_string(t.priority));
  c.check(t.profit >= 1 && t.profit <= 10, e, "profit-range", std::to_string(t.profit));
  if (kind == InstanceKind::kGenerated) {
    c.check(t.duration_s >= 5 && t.duration_s <= 15, e, "duration-range",
            std::to_string(t.duration_s));
  } else {
    c.check(t.duration_s >= 1, e, "duration-positive", std::to_string(t.duration_s));
  }
}

}  // namespace

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport out;
  Collector c(out);
  const std::string ie = "instance " + inst.id;
  c.check(inst.horizon_s > 0 && std::isfinite(inst.horizon_s), ie, "horizon-positive",
          num(inst.horizon_s));
  c.check(inst.slot_step_s > 0, ie, "slot-step-positive");
  if (inst.fixed_transition_s) {
    c.check(*inst.fixed_transition_s >= 0, ie, "fixed-transition-nonnegative");
  }

  std::unordered_map<std::string, const SatelliteSpec*> sats;
  for (const SatelliteSpec& s : inst.satellites) {
    check_satellite(s, c);
    c.check(sats.emplace(s.id, &s).second, "satellite " + s.id, "id-unique");
    c.check(s.envelope.platform == inst.platform || inst.kind == InstanceKind::kSynthetic,
            "satellite " + s.id, "platform-matches-instance");
  }
  std::unordered_map<std::string, const TaskSpec*> tasks;
  for (const TaskSpec& t : inst.tasks) {
    check_task(t, inst.kind, c);
    c.check(tasks.emplace(t.id, &t).second, "task " + t.id, "id-unique");
  }

  for (std::size_t w = 0; w < inst.visible_windows.size(); ++w) {
    const VisibleWindow& win = inst.visible_windows[w];
    const std::string e = "window " + std::to_string(w) + " (" + win.task_id + "@" +
                          win.satellite_id + ")";
    auto sit = sats.find(win.satellite_id);
    c.check(sit != sats.end(), e, "satellite-exists");
    c.check(tasks.count(win.task_id) > 0, e, "task-exists");
    c.check(win.start_s >= 0.0, e, "start-nonnegative", num(win.start_s));
    c.check(win.start_s < win.end_s, e, "start-before-end");
    c.check(win.end_s <= inst.horizon_s + kTol, e, "end-within-horizon", num(win.end_s));
    if (sit == sats.end()) continue;
    const AttitudeEnvelope& env = sit->second->envelope;
    for (const AttitudeSample& a : win.attitude_track) {
      const bool in = std::abs(a.angles.roll_deg) <= env.max_roll_deg + kTol &&
                      std::abs(a.angles.pitch_deg) <= env.max_pitch_deg + kTol &&
                      std::abs(a.angles.yaw_deg) <= env.max_yaw_deg + kTol;
      c.check(in, e, "attitude-within-envelope", "t=" + num(a.t_s));
      c.check(a.t_s >= win.start_s - kTol && a.t_s <= win.end_s + kTol, e,
              "attitude-sample-inside-window", "t=" + num(a.t_s));
    }
    if (win.fixed_roll_deg) {
      c.check(std::abs(*win.fixed_roll_deg) <= env.max_roll_deg + kTol, e,
              "fixed-roll-within-envelope");
    }
    if (inst.kind == InstanceKind::kGenerated) {
      if (env.platform == Platform::kAgile) {
        c.check(!win.attitude_track.empty(), e, "agile-window-has-track");
      } else {
        c.check(win.fixed_roll_deg.has_value(), e, "non-agile-window-has-fixed-roll");
      }
    }
  }

  for (std::size_t k = 0; k < inst.opportunities.size(); ++k) {
    const AvailableOpportunity& o = inst.opportunities[k];
    const std::string e = "opportunity " + std::to_string(k);
    if (o.window_index >= inst.visible_windows.size()) {
      c.check(false, e, "parent-window-exists", std::to_string(o.window_index));
      continue;
    }
    const VisibleWindow& win = inst.visible_windows[o.window_index];
    c.check(win.task_id == o.task_id && win.satellite_id == o.satellite_id, e,
            "matches-parent-window");
    c.check(o.start_s >= win.start_s - kTol && o.end_s <= win.end_s + kTol, e,
            "inside-parent-window");
    auto tit = tasks.find(o.task_id);
    if (tit != tasks.end()) {
      c.check(std::abs(o.end_s - o.start_s - tit->second->duration_s) <= 1e-6, e,
              "length-equals-duration");
    }
  }
  return out;
}

}  // namespace eosb
