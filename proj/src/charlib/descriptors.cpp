#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "eosb/charlib.hpp"
#include "eosb/feaslib.hpp"

namespace eosb {
namespace {

constexpr double kEps = 1e-9;

struct Interval {
  double lo, hi;
};

void merge(std::vector<Interval>& v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::size_t w = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w > 0 && v[i].lo <= v[w - 1].hi) {
      v[w - 1].hi = std::max(v[w - 1].hi, v[i].hi);
    } else {
      v[w++] = v[i];
    }
  }
  v.resize(w);
}

// Conflicting opportunity pairs on one satellite, found by a sweep bounded
// by the longest possible transition.
template <typename F>
void for_each_conflict(const InstanceIndex& index, int sat, F&& f) {
  const auto opps = index.sat_opps(sat);
  const double reach = index.max_transition_s() + kEps;
  for (std::size_t i = 0; i < opps.size(); ++i) {
    const InstanceIndex::Opp& a = index.opp(opps[i]);
    for (std::size_t j = i + 1; j < opps.size(); ++j) {
      const InstanceIndex::Opp& b = index.opp(opps[j]);
      if (b.start > a.end + reach) break;
      if (a.task == b.task) continue;
      if (!index.compatible(opps[i], opps[j]).compatible) f(opps[i], opps[j]);
    }
  }
}

std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

TaskDescriptors task_descriptors(const Instance& inst) {
  const InstanceIndex index(inst);
  TaskDescriptors d;
  const int n = index.task_count();
  d.degenerate = n < 2;
  if (n == 0) return d;

  std::vector<int> windows(n, 0);
  std::vector<std::vector<int>> task_sats(n);
  std::unordered_map<std::string, int> sat_of;
  for (int s = 0; s < index.satellite_count(); ++s) sat_of[inst.satellites[s].id] = s;
  for (const VisibleWindow& w : inst.visible_windows) {
    const int t = index.task_index(w.task_id);
    if (t < 0) continue;
    ++windows[t];
    task_sats[t].push_back(sat_of.at(w.satellite_id));
  }
  double ao = 0, oc = 0, te = 0;
  for (int t = 0; t < n; ++t) {
    const auto a = static_cast<double>(index.task_opps(t).size());
    ao += a;
    oc += a <= 2 ? 1 : 0;
    auto& sats = task_sats[t];
    std::sort(sats.begin(), sats.end());
    sats.erase(std::unique(sats.begin(), sats.end()), sats.end());
    te += static_cast<double>(sats.size()) * windows[t];
  }
  d.gamma_ao = ao / n;
  d.gamma_oc = oc / n;
  d.gamma_te = te / n;
  if (n < 2) return d;

  // Per-satellite opportunity counts of every task, for C_ij.
  std::vector<std::vector<std::pair<int, int>>> counts(n);  // (sat, count)
  std::vector<std::vector<int>> sat_tasks(index.satellite_count());
  for (int t = 0; t < n; ++t) {
    std::unordered_map<int, int> c;
    for (int o : index.task_opps(t)) ++c[index.opp(o).sat];
    for (const auto& [s, k] : c) counts[t].push_back({s, k});
    std::sort(counts[t].begin(), counts[t].end());
    for (const auto& [s, k] : counts[t]) sat_tasks[s].push_back(t);
  }
  // Comparable pairs: share at least one satellite timeline.
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<std::uint64_t> comparable((nn * nn + 63) / 64, 0);
  std::size_t comparable_pairs = 0;
  for (const auto& ts : sat_tasks) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        const std::size_t bit = static_cast<std::size_t>(ts[i]) * nn + ts[j];
        if (!(comparable[bit >> 6] >> (bit & 63) & 1)) {
          comparable[bit >> 6] |= std::uint64_t{1} << (bit & 63);
          ++comparable_pairs;
        }
      }
    }
  }

  std::unordered_map<std::uint64_t, long long> conflicts;
  for (int s = 0; s < index.satellite_count(); ++s) {
    for_each_conflict(index, s, [&](int a, int b) {
      ++conflicts[pair_key(index.opp(a).task, index.opp(b).task)];
    });
  }
  std::vector<std::pair<std::uint64_t, long long>> ordered(conflicts.begin(), conflicts.end());
  std::sort(ordered.begin(), ordered.end());
  double ratio_sum = 0;
  for (const auto& [key, f] : ordered) {
    const int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xffffffffu);
    long long c = 0;
    auto ia = counts[a].begin(), ib = counts[b].begin();
    while (ia != counts[a].end() && ib != counts[b].end()) {
      if (ia->first < ib->first) {
        ++ia;
      } else if (ib->first < ia->first) {
        ++ib;
      } else {
        c += static_cast<long long>(ia->second) * ib->second;
        ++ia;
        ++ib;
      }
    }
    ratio_sum += static_cast<double>(f) / static_cast<double>(c);
  }
  const double all_pairs = 0.5 * n * (n - 1.0);
  d.gamma_ti = static_cast<double>(ordered.size()) / all_pairs;
  d.gamma_at = comparable_pairs > 0 ? ratio_sum / static_cast<double>(comparable_pairs) : 0.0;
  return d;
}

SatelliteDescriptors satellite_descriptors(const Instance& inst, double step) {
  if (!(step > 0)) throw DomainError("analysis step must be positive");
  const InstanceIndex index(inst);
  SatelliteDescriptors d;
  const int n_sat = index.satellite_count();
  const double h = inst.horizon_s;
  if (n_sat == 0 || !(h > 0)) return d;
  const long steps = static_cast<long>(std::ceil(h / step - kEps));

  double contention = 0, active = 0;
  int conflict_sats = 0;
  double seg_time = 0, depth_sum = 0, excess = 0;
  long conflict_steps = 0;
  int q_max = 0;
  struct Segment {
    double duration;
    int depth;
  };
  std::vector<Segment> segments;
  std::vector<int> diff(static_cast<std::size_t>(steps) + 1);

  for (int s = 0; s < n_sat; ++s) {
    // Activity per task on this satellite, plus transition gaps that make
    // two of its opportunities conflict.
    std::unordered_map<int, std::vector<Interval>> activity, presence;
    for (int o : index.sat_opps(s)) {
      const InstanceIndex::Opp& x = index.opp(o);
      activity[x.task].push_back({x.start, x.end});
    }
    for_each_conflict(index, s, [&](int a, int b) {
      const InstanceIndex::Opp &x = index.opp(a), &y = index.opp(b);
      const InstanceIndex::Opp& first = x.end < y.start ? x : y;
      const InstanceIndex::Opp& second = x.end < y.start ? y : x;
      if (second.start > first.end) {
        presence[x.task].push_back({first.end, second.start});
        presence[y.task].push_back({first.end, second.start});
      }
    });
    std::vector<int> tasks;
    for (auto& [t, v] : activity) {
      merge(v);
      tasks.push_back(t);
    }
    std::sort(tasks.begin(), tasks.end());

    // Continuous contention: sweep activity boundaries.
    std::vector<std::pair<double, int>> events;
    for (int t : tasks) {
      for (const Interval& iv : activity[t]) {
        events.push_back({iv.lo, +1});
        events.push_back({iv.hi, -1});
      }
    }
    std::sort(events.begin(), events.end());
    int level = 0;
    for (std::size_t e = 0; e < events.size(); ++e) {
      level += events[e].second;
      if (e + 1 < events.size()) {
        const double dt = events[e + 1].first - events[e].first;
        if (dt > 0 && level > 0) {
          contention += 0.5 * level * (level - 1) * dt;
          active += level * dt;
        }
      }
    }

    // Discrete occupancy per analysis step.
    std::fill(diff.begin(), diff.end(), 0);
    for (int t : tasks) {
      std::vector<Interval> p = activity[t];
      auto it = presence.find(t);
      if (it != presence.end()) p.insert(p.end(), it->second.begin(), it->second.end());
      merge(p);
      long last_hi = -1;
      for (const Interval& iv : p) {
        if (!(iv.hi > iv.lo)) continue;
        long lo = static_cast<long>(std::floor(iv.lo / step + kEps));
        long hi = static_cast<long>(std::ceil(iv.hi / step - kEps));
        lo = std::clamp(lo, 0L, steps);
        hi = std::clamp(hi, 0L, steps);
        lo = std::max(lo, last_hi);  // a step counts a task once
        if (hi <= lo) continue;
        ++diff[lo];
        --diff[hi];
        last_hi = hi;
      }
    }
    bool any = false;
    int q = 0;
    double cur_d = 0;
    int cur_q = 0;
    for (long tau = 0; tau <= steps; ++tau) {
      if (tau < steps) q += diff[tau];
      const bool conflict = tau < steps && q >= 2;
      if (conflict) {
        const double dt = std::min(step, h - tau * step);
        any = true;
        ++conflict_steps;
        depth_sum += q;
        cur_d += dt;
        cur_q = std::max(cur_q, q);
      } else if (cur_d > 0) {
        segments.push_back({cur_d, cur_q});
        seg_time += cur_d;
        q_max = std::max(q_max, cur_q);
        cur_d = 0;
        cur_q = 0;
      }
    }
    conflict_sats += any ? 1 : 0;
  }

  d.lambda_oc = active > 0 ? contention / active : 0.0;
  d.lambda_cs = static_cast<double>(conflict_sats) / n_sat;
  d.lambda_to = seg_time / (n_sat * h);
  d.lambda_ac = conflict_steps > 0 ? depth_sum / static_cast<double>(conflict_steps) : 0.0;
  if (!segments.empty() && q_max > 1) {
    for (const Segment& g : segments) excess += std::max(g.depth - 1, 0) * g.duration;
    d.lambda_ed = excess / ((q_max - 1.0) * seg_time);
  }
  return d;
}

double default_analysis_step(const Instance& inst) { return inst.tasks.size() <= 200 ? 1.0 : 10.0; }

DescriptorReport characterise(const Instance& inst, std::optional<double> step_s) {
  const double step = step_s.value_or(default_analysis_step(inst));
  const TaskDescriptors t = task_descriptors(inst);
  const SatelliteDescriptors s = satellite_descriptors(inst, step);
  DescriptorReport r;
  r.id = inst.id;
  r.level = DescriptorLevel::kInstance;
  r.analysis_step_s = step;
  r.degenerate = t.degenerate;
  r.gamma_ao = t.gamma_ao;
  r.gamma_oc = t.gamma_oc;
  r.gamma_ti = t.gamma_ti;
  r.gamma_at = t.gamma_at;
  r.gamma_te = t.gamma_te;
  r.lambda_oc = s.lambda_oc;
  r.lambda_cs = s.lambda_cs;
  r.lambda_to = s.lambda_to;
  r.lambda_ac = s.lambda_ac;
  r.lambda_ed = s.lambda_ed;
  return r;
}

DescriptorReport aggregate(std::span<const DescriptorReport> reports, const std::string& scenario_id) {
  if (reports.empty()) throw DomainError("aggregate needs at least one report");
  DescriptorReport out;
  out.id = scenario_id.empty() ? reports.front().id : scenario_id;
  out.level = DescriptorLevel::kScenario;
  out.analysis_step_s = reports.front().analysis_step_s;
  out.instance_count = 0;
  // Sum in a canonical order so the mean is independent of input order.
  std::vector<const DescriptorReport*> sorted;
  for (const DescriptorReport& r : reports) {
    if (r.analysis_step_s != out.analysis_step_s) {
      throw DomainError("cannot aggregate reports with different analysis steps");
    }
    sorted.push_back(&r);
  }
  auto fields = [](const DescriptorReport& r) {
    return std::array<double, 10>{r.gamma_ao,  r.gamma_oc,  r.gamma_ti,  r.gamma_at,  r.gamma_te,
                                  r.lambda_oc, r.lambda_cs, r.lambda_to, r.lambda_ac, r.lambda_ed};
  };
  std::sort(sorted.begin(), sorted.end(), [&](const DescriptorReport* a, const DescriptorReport* b) {
    if (a->id != b->id) return a->id < b->id;
    return fields(*a) < fields(*b);
  });
  std::array<double, 10> sum{};
  for (const DescriptorReport* r : sorted) {
    const auto f = fields(*r);
    for (int k = 0; k < 10; ++k) sum[k] += f[k];
    out.instance_count += r->instance_count;
    out.degenerate = out.degenerate || r->degenerate;
  }
  const double m = static_cast<double>(sorted.size());
  out.gamma_ao = sum[0] / m;
  out.gamma_oc = sum[1] / m;
  out.gamma_ti = sum[2] / m;
  out.gamma_at = sum[3] / m;
  out.gamma_te = sum[4] / m;
  out.lambda_oc = sum[5] / m;
  out.lambda_cs = sum[6] / m;
  out.lambda_to = sum[7] / m;
  out.lambda_ac = sum[8] / m;
  out.lambda_ed = sum[9] / m;
  return out;
}

}  // namespace eosb
