#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "orbit.hpp"

namespace eosb {
namespace {

constexpr double kDeg = kPi / 180.0;
// Any roll/pitch pair inside a 45/45 envelope is at most 60 deg off nadir.
constexpr double kMaxOffNadirDeg = 60.0;

// Largest Earth-central angle between sub-satellite point and a visible
// target, for a satellite no higher than r_max.
double max_central_angle_rad(double r_max_km, const AttitudeEnvelope& env) {
  const double tr = std::tan(std::min(env.max_roll_deg, 89.0) * kDeg);
  const double pitch = env.platform == Platform::kNonAgile
                           ? kNonAgilePitchToleranceDeg
                           : std::min(env.max_pitch_deg, 89.0);
  const double tp = std::tan(pitch * kDeg);
  const double eta = std::min(std::atan(std::sqrt(tr * tr + tp * tp)), kMaxOffNadirDeg * kDeg * 1.5);
  const double s = std::min(1.0, r_max_km / kEarthRadiusKm * std::sin(eta));
  const double lam = std::asin(s) - eta;
  // Beyond the tangent point the horizon bounds the visible cap.
  const double horizon = std::acos(kEarthRadiusKm / r_max_km);
  return std::min(lam, horizon) + 0.5 * kDeg;
}

struct TaskGrid {
  static constexpr double kCellDeg = 5.0;
  static constexpr int kRows = 36, kCols = 72;
  std::vector<std::vector<int>> cells = std::vector<std::vector<int>>(kRows * kCols);
  std::vector<Vec3> unit_ecef;

  explicit TaskGrid(const std::vector<TaskSpec>& tasks) {
    unit_ecef.reserve(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const TaskSpec& t = tasks[i];
      unit_ecef.push_back((1.0 / kEarthRadiusKm) * target_inertial({t.lat_deg, t.lon_deg}, 0.0));
      cells[cell(t.lat_deg, t.lon_deg)].push_back(static_cast<int>(i));
    }
  }
  static int row(double lat) { return std::clamp(static_cast<int>(std::floor((lat + 90.0) / kCellDeg)), 0, kRows - 1); }
  static int col(double lon) {
    int c = static_cast<int>(std::floor((lon + 180.0) / kCellDeg)) % kCols;
    return c < 0 ? c + kCols : c;
  }
  static int cell(double lat, double lon) { return row(lat) * kCols + col(lon); }

  template <typename F>
  void query(double lat, double lon, double radius_deg, F&& f) const {
    const double lat_lo = lat - radius_deg, lat_hi = lat + radius_deg;
    const int r0 = row(std::max(-90.0, lat_lo)), r1 = row(std::min(90.0, lat_hi));
    const double max_abs_lat = std::max(std::abs(lat_lo), std::abs(lat_hi));
    bool all_cols = max_abs_lat >= 89.0;
    double dlon = 0;
    if (!all_cols) {
      dlon = radius_deg / std::cos(max_abs_lat * kDeg);
      all_cols = dlon >= 180.0;
    }
    for (int r = r0; r <= r1; ++r) {
      if (all_cols) {
        for (int c = 0; c < kCols; ++c) {
          for (int t : cells[r * kCols + c]) f(t);
        }
      } else {
        const int c0 = static_cast<int>(std::floor((lon - dlon + 180.0) / kCellDeg));
        const int c1 = static_cast<int>(std::floor((lon + dlon + 180.0) / kCellDeg));
        for (int c = c0; c <= c1; ++c) {
          const int cc = ((c % kCols) + kCols) % kCols;
          for (int t : cells[r * kCols + cc]) f(t);
        }
      }
    }
  }
};

struct Epoch {
  SatState state;
  Vec3 nadir_ecef;  // unit vector of the sub-satellite direction, Earth-fixed
};

Vec3 to_ecef(Vec3 v, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * v.x + s * v.y, -s * v.x + c * v.y, v.z};
}

class SatelliteScanner {
 public:
  SatelliteScanner(const SatelliteSpec& sat, const std::vector<double>& times,
                   const std::vector<TaskSpec>& tasks, const TaskGrid& grid, double step_s)
      : sat_(sat), orbit_(sat.elements), times_(times), tasks_(tasks), grid_(grid), step_(step_s) {}

  std::vector<std::vector<VisibleWindow>> run() {
    std::vector<std::vector<VisibleWindow>> out(tasks_.size());
    const double r_max = sat_.elements.semi_major_axis_km * (1.0 + sat_.elements.eccentricity);
    const double lam = max_central_angle_rad(r_max, sat_.envelope);
    const double cos_lam = std::cos(lam);
    const double lam_deg = lam / kDeg;

    // Candidate epochs per task: only those inside the visibility cap.
    std::vector<std::vector<int>> hits(tasks_.size());
    std::vector<int> touched;
    epochs_.resize(times_.size());
    for (std::size_t k = 0; k < times_.size(); ++k) {
      Epoch& ep = epochs_[k];
      ep.state = orbit_.at(times_[k]);
      ep.nadir_ecef = unit(to_ecef(ep.state.position_km, ep.state.earth_angle_rad));
      const double lat = std::asin(std::clamp(ep.nadir_ecef.z, -1.0, 1.0)) / kDeg;
      const double lon = std::atan2(ep.nadir_ecef.y, ep.nadir_ecef.x) / kDeg;
      grid_.query(lat, lon, lam_deg, [&](int t) {
        if (dot(grid_.unit_ecef[t], ep.nadir_ecef) < cos_lam) return;
        if (hits[t].empty()) touched.push_back(t);
        hits[t].push_back(static_cast<int>(k));
      });
    }
    std::sort(touched.begin(), touched.end());
    for (int t : touched) out[t] = scan_task(tasks_[t], hits[t]);
    return out;
  }

 private:
  bool visible_at(double t, Geodetic g) const { return visibility(orbit_.at(t), g, sat_.envelope); }

  double refine(double invisible_t, double visible_t, Geodetic g) const {
    const double tol = step_ / 100.0;
    double bad = invisible_t, good = visible_t;
    while (std::abs(good - bad) > tol) {
      const double mid = 0.5 * (bad + good);
      if (visible_at(mid, g)) {
        good = mid;
      } else {
        bad = mid;
      }
    }
    return good;
  }

  // Non-agile windows can be shorter than the sampling step; look for the
  // pitch zero crossing between two invisible samples that straddle nadir.
  std::optional<double> crossing(double t0, double t1, double p0, Geodetic g) const {
    double lo = t0, hi = t1, plo = p0;
    const double tol = step_ / 1000.0;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      const auto a = look_angles(orbit_.at(mid), g);
      if (!a) return std::nullopt;
      if ((a->pitch_deg > 0) == (plo > 0)) {
        lo = mid;
        plo = a->pitch_deg;
      } else {
        hi = mid;
      }
    }
    const double mid = 0.5 * (lo + hi);
    if (visible_at(mid, g)) return mid;
    return std::nullopt;
  }

  std::vector<VisibleWindow> scan_task(const TaskSpec& task, const std::vector<int>& ks) {
    const Geodetic g{task.lat_deg, task.lon_deg};
    const std::size_t n = times_.size();
    // Visibility over the full grid is false outside the candidate epochs.
    std::vector<signed char> vis(ks.size());
    std::vector<double> pitch(ks.size(), 0.0);
    std::vector<bool> los(ks.size(), false);
    for (std::size_t j = 0; j < ks.size(); ++j) {
      const auto a = look_angles(epochs_[ks[j]].state, g);
      los[j] = a.has_value();
      if (a) pitch[j] = a->pitch_deg;
      vis[j] = a && within_envelope(*a, sat_.envelope);
    }
    struct Run {
      double start, end;
    };
    std::vector<Run> runs;
    std::size_t j = 0;
    while (j < ks.size()) {
      if (!vis[j]) {
        if (sat_.envelope.platform == Platform::kNonAgile && j + 1 < ks.size() &&
            ks[j + 1] == ks[j] + 1 && !vis[j + 1] && los[j] && los[j + 1] &&
            (pitch[j] > 0) != (pitch[j + 1] > 0)) {
          if (auto tc = crossing(times_[ks[j]], times_[ks[j + 1]], pitch[j], g)) {
            runs.push_back({refine(times_[ks[j]], *tc, g), refine(times_[ks[j + 1]], *tc, g)});
          }
        }
        ++j;
        continue;
      }
      std::size_t e = j;
      while (e + 1 < ks.size() && vis[e + 1] && ks[e + 1] == ks[e] + 1) ++e;
      const int k0 = ks[j], k1 = ks[e];
      const double start = k0 == 0 ? times_[0] : refine(times_[k0 - 1], times_[k0], g);
      const double end = static_cast<std::size_t>(k1) + 1 >= n
                             ? times_[k1]
                             : refine(times_[k1 + 1], times_[k1], g);
      runs.push_back({start, end});
      j = e + 1;
    }

    std::vector<VisibleWindow> out;
    for (const Run& r : runs) {
      if (r.end - r.start < task.duration_s || r.end <= r.start) continue;
      VisibleWindow w;
      w.task_id = task.id;
      w.satellite_id = sat_.id;
      w.start_s = r.start;
      w.end_s = r.end;
      if (sat_.envelope.platform == Platform::kAgile) {
        auto sample = [&](double t, const SatState& st) {
          const auto a = look_angles(st, g);
          if (a && within_envelope(*a, sat_.envelope)) w.attitude_track.push_back({t, *a});
        };
        sample(r.start, orbit_.at(r.start));
        const auto first = std::upper_bound(times_.begin(), times_.end(), r.start);
        for (auto it = first; it != times_.end() && *it < r.end; ++it) {
          sample(*it, epochs_[static_cast<std::size_t>(it - times_.begin())].state);
        }
        sample(r.end, orbit_.at(r.end));
        if (w.attitude_track.empty()) continue;
      } else {
        const double mid = 0.5 * (r.start + r.end);
        auto a = look_angles(orbit_.at(mid), g);
        if (!a || std::abs(a->roll_deg) > sat_.envelope.max_roll_deg) a = look_angles(orbit_.at(r.start), g);
        if (!a) continue;
        w.fixed_roll_deg = a->roll_deg;
      }
      out.push_back(std::move(w));
    }
    return out;
  }

  const SatelliteSpec& sat_;
  detail::Orbit orbit_;
  const std::vector<double>& times_;
  const std::vector<TaskSpec>& tasks_;
  const TaskGrid& grid_;
  double step_;
  std::vector<Epoch> epochs_;
};

std::vector<double> grid_times(double horizon_s, double step_s) {
  std::vector<double> times;
  if (!(horizon_s > 0)) return times;
  const long k_max = static_cast<long>(std::floor(horizon_s / step_s + 1e-9));
  times.reserve(static_cast<std::size_t>(k_max) + 2);
  for (long k = 0; k <= k_max; ++k) times.push_back(std::min(horizon_s, k * step_s));
  if (times.back() < horizon_s - 1e-9) times.push_back(horizon_s);
  return times;
}

}  // namespace

std::vector<VisibleWindow> compute_all_windows(const std::vector<SatelliteSpec>& sats,
                                               const std::vector<TaskSpec>& tasks,
                                               double horizon_s, double step_s, int threads) {
  if (!(step_s > 0)) throw DomainError("window sampling step must be positive");
  const std::vector<double> times = grid_times(horizon_s, step_s);
  if (times.empty() || sats.empty() || tasks.empty()) return {};
  const TaskGrid grid(tasks);

  std::vector<std::vector<std::vector<VisibleWindow>>> per_sat(sats.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t s = next++; s < sats.size(); s = next++) {
      per_sat[s] = SatelliteScanner(sats[s], times, tasks, grid, step_s).run();
    }
  };
  const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(sats.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<VisibleWindow> out;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    for (std::size_t s = 0; s < sats.size(); ++s) {
      for (VisibleWindow& w : per_sat[s][t]) out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<VisibleWindow> compute_visible_windows(const SatelliteSpec& sat, const TaskSpec& task,
                                                   double horizon_s, double step_s) {
  return compute_all_windows({sat}, {task}, horizon_s, step_s, 1);
}

std::vector<AvailableOpportunity> derive_opportunities(const VisibleWindow& w, double duration_s,
                                                       double slot_step_s,
                                                       std::size_t window_index) {
  if (!(slot_step_s > 0)) throw DomainError("slot step must be positive");
  std::vector<AvailableOpportunity> out;
  const double last = w.end_s - duration_s;
  if (last < w.start_s - 1e-9) return out;
  auto push = [&](double s) {
    out.push_back({w.task_id, w.satellite_id, window_index, s, s + duration_s});
  };
  for (long k = 0;; ++k) {
    const double s = w.start_s + k * slot_step_s;
    if (s > last - 1e-9) break;
    push(s);
  }
  push(std::max(w.start_s, last));
  return out;
}

}  // namespace eosb
