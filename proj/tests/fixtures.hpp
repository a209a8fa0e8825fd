// Shared test instances and brute-force oracles.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "eosb/charlib.hpp"
#include "eosb/evallib.hpp"
#include "eosb/feaslib.hpp"
#include "eosb/kinematics.hpp"
#include "eosb/random.hpp"

namespace eosb::testing {

// Two satellites, four tasks, horizon 10, unit slots and unit transition.
inline SyntheticSpec toy_spec() {
  SyntheticSpec s;
  s.id = "toy";
  s.horizon_s = 10;
  s.satellites = {synthetic_satellite("S1"), synthetic_satellite("S2")};
  s.tasks = {{"A", 3}, {"B", 3}, {"C", 2}, {"D", 2}};
  s.windows = {{"A", "S1", 0, 4, {}}, {"A", "S2", 5, 8, {}}, {"B", "S1", 3, 6, {}}, {"C", "S2", 6, 9, {}}};
  s.transition_s = 1.0;
  s.slot_step_s = 1.0;
  return s;
}

inline Instance toy_instance() { return build_synthetic_instance(toy_spec()); }

struct RandomSpecOptions {
  int max_sats = 3;
  int max_tasks = 6;
  int max_candidates = 12;  // total opportunities
  int max_slack_s = 3;      // window length beyond the task duration
  double horizon_s = 300;
  bool random_capacity = true;
};

// Seeded synthetic instance with random attitudes, profits and capacities.
inline Instance random_instance(std::uint64_t seed, const RandomSpecOptions& o = {}) {
  Rng rng(seed);
  SyntheticSpec s;
  s.id = "rand-" + std::to_string(seed);
  s.horizon_s = o.horizon_s;
  const int n_sat = static_cast<int>(rng.uniform_int(1, o.max_sats));
  const int n_task = static_cast<int>(rng.uniform_int(1, o.max_tasks));
  for (int i = 0; i < n_sat; ++i) {
    SatelliteSpec sat = synthetic_satellite("S" + std::to_string(i + 1));
    if (o.random_capacity) {
      sat.capacities.energy_per_orbit = rng.uniform(40, 260);
      sat.capacities.storage_per_orbit = rng.uniform(20, 120);
    }
    s.satellites.push_back(sat);
  }
  for (int i = 0; i < n_task; ++i) {
    s.tasks.push_back({"T" + std::to_string(i + 1), static_cast<int>(rng.uniform_int(5, 15)),
                       static_cast<int>(rng.uniform_int(1, 10)), static_cast<int>(rng.uniform_int(1, 10))});
  }
  auto angles = [&] {
    LookAngles a;
    a.roll_deg = rng.uniform(-45, 45);
    a.pitch_deg = rng.uniform(-45, 45);
    return a;
  };
  int budget = o.max_candidates;
  const int n_windows = static_cast<int>(rng.uniform_int(1, std::max(1, 2 * n_task)));
  for (int w = 0; w < n_windows && budget > 0; ++w) {
    const SyntheticTask& t = s.tasks[rng.index(s.tasks.size())];
    const int slack = static_cast<int>(std::min<std::int64_t>(rng.uniform_int(0, o.max_slack_s), budget - 1));
    const double len = t.duration_s + slack;
    const double start = std::floor(rng.uniform(0, o.horizon_s - len));
    SyntheticWindow win{t.id, s.satellites[rng.index(s.satellites.size())].id, start, start + len, {}};
    win.attitude_track = {{start, angles()}, {start + len, angles()}};
    s.windows.push_back(win);
    budget -= slack + 1;
  }
  return build_synthetic_instance(s);
}

// Straightforward feasibility check written independently of feaslib: pairwise
// same-satellite separation plus a per-orbit energy and memory sum.
inline bool direct_feasible(const std::vector<Assignment>& sel, const Instance& inst) {
  std::map<std::string, int> seen;
  for (const Assignment& a : sel) {
    if (++seen[a.task_id] > 1) return false;
  }
  auto duration = [&](const Assignment& a) {
    for (const TaskSpec& t : inst.tasks) {
      if (t.id == a.task_id) return static_cast<double>(t.duration_s);
    }
    return 0.0;
  };
  for (std::size_t i = 0; i < sel.size(); ++i) {
    for (std::size_t j = 0; j < sel.size(); ++j) {
      const Assignment& a = sel[i];
      const Assignment& b = sel[j];
      if (i == j || a.satellite_id != b.satellite_id) continue;
      if (b.start_s < a.start_s || (b.start_s == a.start_s && j < i)) continue;  // a first
      const double a_end = a.start_s + duration(a);
      if (b.start_s <= a_end) return false;  // closed intervals touch or overlap
      if (b.start_s - a_end < min_separation(a, b, inst)) return false;
    }
  }
  for (const SatelliteSpec& sat : inst.satellites) {
    std::vector<Assignment> mine;
    for (const Assignment& a : sel) {
      if (a.satellite_id == sat.id) mine.push_back(a);
    }
    std::sort(mine.begin(), mine.end(), [](const Assignment& x, const Assignment& y) { return x.start_s < y.start_s; });
    const double period = orbital_period_s(sat.elements);
    std::map<long long, std::pair<double, double>> used;  // segment -> (energy, memory)
    long long segment = -1;
    LookAngles prev;
    for (const Assignment& a : mine) {
      const long long k = static_cast<long long>(std::floor(a.start_s / period));
      if (k != segment) {
        segment = k;
        prev = LookAngles{};
      }
      const AvailableOpportunity& o = inst.opportunities[a.opportunity];
      const VisibleWindow& w = inst.visible_windows[o.window_index];
      const LookAngles start = attitude_at(w, o.start_s);
      const LookAngles end = attitude_at(w, o.end_s);
      const double d = duration(a);
      used[k].first += d * sat.rates.obs_energy_rate +
                       (delta_g(prev, start) + delta_g(start, end)) * sat.rates.slew_energy_rate;
      used[k].second += d * sat.rates.obs_memory_rate;
      prev = end;
    }
    for (const auto& [k, u] : used) {
      if (u.first > sat.capacities.energy_per_orbit + 1e-9) return false;
      if (u.second > sat.capacities.storage_per_orbit + 1e-9) return false;
    }
  }
  return true;
}

// Objective values of a selection evaluated directly from the metric
// definitions: profit sum, completion ratio, and the equal-weight composite
// with sample-deviation balance clamped to [0, 1].
struct OracleScores {
  double tp = 0, tcr = 0, tm = 1, all = 0;
  std::optional<double> bd;  // unclamped; empty when nothing is scheduled
};

inline OracleScores oracle_scores(const Schedule& schedule, const Instance& inst) {
  OracleScores out;
  if (inst.tasks.empty()) return out;
  double total = 0, start_sum = 0;
  std::map<std::string, int> profit;
  for (const TaskSpec& t : inst.tasks) {
    total += t.profit;
    profit[t.id] = t.profit;
  }
  std::map<std::string, int> per_sat;
  for (const Assignment& a : schedule.assignments) {
    out.tp += profit.at(a.task_id);
    start_sum += a.start_s;
    ++per_sat[a.satellite_id];
  }
  const double n = static_cast<double>(inst.tasks.size());
  const double done = static_cast<double>(schedule.assignments.size());
  out.tcr = done / n;
  out.tm = (start_sum / inst.horizon_s + (n - done)) / n;
  if (per_sat.size() == 1) {
    out.bd = 1;
  } else if (per_sat.size() > 1) {
    double mean = 0;
    for (const auto& [id, c] : per_sat) mean += c;
    mean /= static_cast<double>(per_sat.size());
    double ss = 0;
    for (const auto& [id, c] : per_sat) ss += (c - mean) * (c - mean);
    out.bd = 1 - std::sqrt(ss / static_cast<double>(per_sat.size() - 1)) / mean;
  }
  const double bd = out.bd ? std::clamp(*out.bd, 0.0, 1.0) : 0.0;
  out.all = (out.tp / total + out.tcr + bd + 1 - out.tm) / 4;
  return out;
}

// Exhaustive optimum over every subset of candidate assignments.
inline OracleScores brute_force_optimum(const Instance& inst) {
  const std::vector<Assignment> cands = candidate_assignments(inst);
  OracleScores best;
  const std::size_t n = cands.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Schedule s;
    s.instance_id = inst.id;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) s.assignments.push_back(cands[i]);
    }
    if (!validate_schedule(s, inst).pass) continue;
    const OracleScores v = oracle_scores(s, inst);
    best.tp = std::max(best.tp, v.tp);
    best.tcr = std::max(best.tcr, v.tcr);
    best.all = std::max(best.all, v.all);
  }
  return best;
}

}  // namespace eosb::testing
