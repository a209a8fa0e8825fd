#include <algorithm>
#include <cmath>
#include <string>

#include "eosb/kinematics.hpp"

namespace eosb {

AgilityProfile agility_profile(AgilityName name) {
  AgilityProfile p;
  p.name = name;
  switch (name) {
    case AgilityName::kHigh: p.velocity_deg_s = {3.0, 4.0, 5.0, 6.0}; break;
    case AgilityName::kStandard: p.velocity_deg_s = {1.5, 2.0, 2.5, 3.0}; break;
    case AgilityName::kLow: p.velocity_deg_s = {0.75, 1.0, 1.25, 1.5}; break;
    case AgilityName::kLimited: p.velocity_deg_s = {0.5, 0.67, 0.83, 1.0}; break;
    case AgilityName::kCustom:
      throw DomainError("custom profiles need explicit velocities");
  }
  p.offset_s = {5.0, 10.0, 16.0, 22.0};
  return p;
}

AgilityProfile custom_profile(const std::array<double, 4>& v) {
  for (double x : v) {
    if (!(x > 0.0)) throw DomainError("agility velocities must be positive");
  }
  AgilityProfile p;
  p.name = AgilityName::kCustom;
  p.velocity_deg_s = v;
  const auto& b = AgilityProfile::kBreakpointsDeg;
  p.offset_s[0] = AgilityProfile::kMinTimeS - b[0] / v[0];
  for (int k = 1; k < 4; ++k) {
    p.offset_s[k] = p.offset_s[k - 1] + b[k] / v[k - 1] - b[k] / v[k];
  }
  return p;
}

double transition_time(double dg, const AgilityProfile& p) {
  if (dg < 0.0 || std::isnan(dg)) throw DomainError("delta_g must be non-negative");
  const auto& b = AgilityProfile::kBreakpointsDeg;
  if (dg <= b[0]) return AgilityProfile::kMinTimeS;
  int k = 0;
  if (dg > b[3]) {
    k = 3;
  } else if (dg > b[2]) {
    k = 2;
  } else if (dg > b[1]) {
    k = 1;
  }
  // Velocity scaling with fixed offsets can dip below the minimum just past
  // 10 degrees (e.g. High: 5 + 10/3); the minimum time is a floor.
  return std::max(AgilityProfile::kMinTimeS, p.offset_s[k] + dg / p.velocity_deg_s[k]);
}

double delta_g(const LookAngles& a, const LookAngles& b) {
  return std::abs(a.roll_deg - b.roll_deg) + std::abs(a.pitch_deg - b.pitch_deg) +
         std::abs(a.yaw_deg - b.yaw_deg);
}

LookAngles attitude_at(const VisibleWindow& w, double t) {
  if (w.attitude_track.empty()) {
    return LookAngles{w.fixed_roll_deg.value_or(0.0), 0.0, 0.0};
  }
  const auto& tr = w.attitude_track;
  auto it = std::lower_bound(tr.begin(), tr.end(), t,
                             [](const AttitudeSample& s, double x) { return s.t_s < x; });
  if (it == tr.begin()) return it->angles;
  if (it == tr.end()) return tr.back().angles;
  auto prev = std::prev(it);
  // Ties go to the earlier sample.
  return (t - prev->t_s <= it->t_s - t) ? prev->angles : it->angles;
}

namespace {

const SatelliteSpec& find_satellite(const Instance& inst, const std::string& id) {
  for (const SatelliteSpec& s : inst.satellites) {
    if (s.id == id) return s;
  }
  throw DomainError("unknown satellite '" + id + "'");
}

const AvailableOpportunity& find_opportunity(const Instance& inst, const Assignment& a) {
  if (a.opportunity >= inst.opportunities.size()) {
    throw DomainError("opportunity index out of range");
  }
  return inst.opportunities[a.opportunity];
}

}  // namespace

double min_separation(const Assignment& a, const Assignment& b, const Instance& inst) {
  if (a.satellite_id != b.satellite_id) {
    throw DomainError("min_separation needs assignments on the same satellite");
  }
  if (inst.fixed_transition_s) return *inst.fixed_transition_s;
  const SatelliteSpec& sat = find_satellite(inst, a.satellite_id);
  if (sat.envelope.platform == Platform::kNonAgile) return kNonAgileTransitionS;
  const AvailableOpportunity& oa = find_opportunity(inst, a);
  const AvailableOpportunity& ob = find_opportunity(inst, b);
  const LookAngles end_a = attitude_at(inst.visible_windows[oa.window_index], oa.end_s);
  const LookAngles start_b = attitude_at(inst.visible_windows[ob.window_index], ob.start_s);
  return transition_time(delta_g(end_a, start_b), sat.agility);
}

}  // namespace eosb
