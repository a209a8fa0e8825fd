// Training-instance sub-sampling from a library of generated instances.
#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "eosb/astro.hpp"
#include "eosb/genlib.hpp"
#include "eosb/kinematics.hpp"
#include "eosb/random.hpp"
#include "eosb/serialize.hpp"

namespace eosb {
namespace {

constexpr double kDeg = kPi / 180.0;

// Digest of the physical content only; ids and provenance are blanked so a
// relabelled copy of a library instance is still recognised.
std::string content_digest(Instance inst) {
  inst.id.clear();
  inst.provenance = {};
  return instance_digest(inst);
}

OrbitalElements advance(const OrbitalElements& el, double dt_s) {
  OrbitalElements out = el;
  const double e = el.eccentricity;
  const double n = std::sqrt(kEarthMuKm3S2 / std::pow(el.semi_major_axis_km, 3));
  const double m = true_to_mean_anomaly(el.true_anomaly_deg * kDeg, e) + n * dt_s;
  out.true_anomaly_deg = normalize_deg(mean_to_true_anomaly(std::fmod(m, 2 * kPi), e) / kDeg);
  out.epoch = format_epoch(parse_epoch_unix_s(el.epoch) + dt_s);
  return out;
}

// Window restricted to [shift, shift + horizon] and re-based to zero.
std::optional<VisibleWindow> clip_window(const VisibleWindow& w, double shift, double horizon,
                                         double duration) {
  const double lo = std::max(w.start_s, shift);
  const double hi = std::min(w.end_s, shift + horizon);
  if (hi - lo < duration - 1e-9) return std::nullopt;
  VisibleWindow out = w;
  out.start_s = lo - shift;
  out.end_s = hi - shift;
  if (!w.attitude_track.empty()) {
    out.attitude_track.clear();
    if (w.attitude_track.front().t_s < lo) out.attitude_track.push_back({lo, attitude_at(w, lo)});
    for (const AttitudeSample& s : w.attitude_track) {
      if (s.t_s >= lo && s.t_s <= hi) out.attitude_track.push_back(s);
    }
    if (w.attitude_track.back().t_s > hi) out.attitude_track.push_back({hi, attitude_at(w, hi)});
    for (AttitudeSample& s : out.attitude_track) s.t_s -= shift;
  }
  return out;
}

Instance fallback(const std::vector<Instance>& library, int attempts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < library.size(); ++i) {
    if (library[i].tasks.size() > library[best].tasks.size()) best = i;
  }
  Instance out = library[best];
  out.provenance.fallback = true;
  out.provenance.note = "sub-sampling fallback after " + std::to_string(attempts) +
                        " attempts; copy of " + library[best].id;
  return out;
}

}  // namespace

Instance subsample_instance(const std::vector<Instance>& library, const SubsampleRanges& ranges,
                            const SubsampleOptions& options) {
  if (library.empty()) throw DomainError("sub-sampling needs a non-empty library");
  if (options.max_attempts < 1) throw DomainError("max_attempts must be at least 1");
  if (ranges.sat_min < 1 || ranges.sat_max < ranges.sat_min || ranges.task_min < 1 ||
      ranges.task_max < ranges.task_min || !(ranges.horizon_min_h > 0) ||
      ranges.horizon_max_h < ranges.horizon_min_h) {
    throw DomainError("invalid sub-sampling ranges");
  }

  std::unordered_set<std::string> library_digests;
  for (const Instance& inst : library) library_digests.insert(content_digest(inst));

  Rng rng(options.seed);
  for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
    const double horizon = rng.uniform(ranges.horizon_min_h, ranges.horizon_max_h) * 3600.0;
    const int n_sat = static_cast<int>(rng.uniform_int(ranges.sat_min, ranges.sat_max));
    const int n_task = static_cast<int>(rng.uniform_int(ranges.task_min, ranges.task_max));

    std::vector<std::size_t> valid;
    for (std::size_t i = 0; i < library.size(); ++i) {
      const Instance& p = library[i];
      if (static_cast<int>(p.satellites.size()) >= n_sat &&
          static_cast<int>(p.tasks.size()) >= n_task && p.horizon_s >= horizon - 1e-9) {
        valid.push_back(i);
      }
    }
    if (valid.empty()) continue;
    const Instance& parent = library[valid[rng.index(valid.size())]];

    std::vector<std::size_t> sat_pick = rng.sample_without_replacement(parent.satellites.size(), n_sat);
    std::vector<std::size_t> task_pick = rng.sample_without_replacement(parent.tasks.size(), n_task);
    std::sort(sat_pick.begin(), sat_pick.end());
    std::sort(task_pick.begin(), task_pick.end());
    const double shift = rng.uniform(0.0, std::max(0.0, parent.horizon_s - horizon));

    Instance child;
    child.kind = parent.kind;
    child.horizon_s = horizon;
    child.platform = parent.platform;
    child.epoch = format_epoch(parse_epoch_unix_s(parent.epoch) + shift);
    child.slot_step_s = parent.slot_step_s;
    child.fixed_transition_s = parent.fixed_transition_s;
    std::unordered_set<std::string> sat_ids;
    for (std::size_t i : sat_pick) {
      SatelliteSpec s = parent.satellites[i];
      s.elements = advance(s.elements, shift);
      sat_ids.insert(s.id);
      child.satellites.push_back(std::move(s));
    }
    std::unordered_map<std::string, int> duration;
    for (std::size_t i : task_pick) {
      child.tasks.push_back(parent.tasks[i]);
      duration[parent.tasks[i].id] = parent.tasks[i].duration_s;
    }

    std::unordered_set<std::string> served;
    for (const VisibleWindow& w : parent.visible_windows) {
      const auto d = duration.find(w.task_id);
      if (d == duration.end() || !sat_ids.count(w.satellite_id)) continue;
      std::optional<VisibleWindow> clipped = clip_window(w, shift, horizon, d->second);
      if (!clipped) continue;
      const std::size_t index = child.visible_windows.size();
      std::vector<AvailableOpportunity> opps =
          derive_opportunities(*clipped, d->second, child.slot_step_s, index);
      if (!opps.empty()) served.insert(w.task_id);
      child.visible_windows.push_back(std::move(*clipped));
      child.opportunities.insert(child.opportunities.end(), opps.begin(), opps.end());
    }

    const double ratio = static_cast<double>(served.size()) / n_task;
    if (ratio < options.feasible_ratio) continue;
    if (library_digests.count(content_digest(child))) continue;

    child.id = parent.id + "-sub" + std::to_string(options.seed) + "-" + std::to_string(attempt);
    child.provenance.scenario_id = parent.provenance.scenario_id;
    child.provenance.seed = static_cast<std::int64_t>(options.seed);
    child.provenance.note = "sub-sampled from " + parent.id + " attempt " + std::to_string(attempt) +
                            " shift_s=" + std::to_string(shift);
    return child;
  }
  return fallback(library, options.max_attempts);
}

}  // namespace eosb
