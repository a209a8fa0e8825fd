#include <algorithm>
#include <cmath>
#include <map>

#include "eosb/feaslib.hpp"
#include "eosb/kinematics.hpp"
#include "json.hpp"

namespace eosb {

const char* const kLedgerConventions =
    "segments are consecutive orbital-period slices starting at t=0 (count = ceil(horizon/period)); "
    "an observation is charged to the segment containing its start; energy = duration*obs_energy_rate "
    "+ (delta_g(previous attitude, start attitude) + delta_g(start attitude, end attitude))*slew_energy_rate; "
    "the previous attitude is nadir for the first observation of each segment; memory = "
    "duration*obs_memory_rate; energy and memory reset at segment boundaries";

namespace {

constexpr double kTimeTol = 1e-9;

std::vector<int> resolve(const Schedule& schedule, const InstanceIndex& index) {
  const Instance& inst = index.instance();
  std::vector<int> out;
  out.reserve(schedule.assignments.size());
  for (std::size_t k = 0; k < schedule.assignments.size(); ++k) {
    const Assignment& a = schedule.assignments[k];
    const std::string where = "assignment " + std::to_string(k);
    const int s = index.satellite_index(a.satellite_id);
    const int t = index.task_index(a.task_id);
    if (s < 0) throw StructuralError(where + ": unknown satellite '" + a.satellite_id + "'");
    if (t < 0) throw StructuralError(where + ": unknown task '" + a.task_id + "'");
    if (a.opportunity >= inst.opportunities.size()) {
      throw StructuralError(where + ": opportunity index out of range");
    }
    const InstanceIndex::Opp& o = index.opp(static_cast<int>(a.opportunity));
    if (o.sat != s || o.task != t) {
      throw StructuralError(where + ": opportunity does not belong to (" + a.satellite_id + ", " +
                            a.task_id + ")");
    }
    if (std::abs(a.start_s - o.start) > kTimeTol) {
      throw StructuralError(where + ": start time differs from the opportunity start");
    }
    out.push_back(static_cast<int>(a.opportunity));
  }
  return out;
}

ResourceLedger ledger_for(const std::vector<int>& opps, const InstanceIndex& index) {
  const Instance& inst = index.instance();
  ResourceLedger ledger;
  const int n_sat = index.satellite_count();
  std::vector<std::vector<int>> per_sat(n_sat);
  for (int o : opps) per_sat[index.opp(o).sat].push_back(o);
  for (int s = 0; s < n_sat; ++s) {
    ledger.satellite_ids.push_back(inst.satellites[s].id);
    std::vector<LedgerSegment> segs(index.segment_count(s));
    for (int k = 0; k < index.segment_count(s); ++k) {
      segs[k].start_s = k * index.period_s(s);
      segs[k].end_s = std::min(inst.horizon_s, (k + 1) * index.period_s(s));
    }
    auto& list = per_sat[s];
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      if (index.opp(a).start != index.opp(b).start) return index.opp(a).start < index.opp(b).start;
      return a < b;
    });
    const PayloadRates& r = inst.satellites[s].rates;
    int current_seg = -1;
    LookAngles prev;
    for (int o : list) {
      const InstanceIndex::Opp& x = index.opp(o);
      const int seg = index.segment_of(s, x.start);
      if (seg != current_seg) {
        current_seg = seg;
        prev = LookAngles{};
      }
      if (segs.empty()) break;
      segs[seg].energy_used += observation_energy(index, o, prev);
      segs[seg].memory_used += (x.end - x.start) * r.obs_memory_rate;
      prev = x.end_att;
    }
    ledger.segments.push_back(std::move(segs));
  }
  return ledger;
}

bool exceeds(double used, double cap) { return used > cap + 1e-9 * std::max(1.0, cap); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::vector<Assignment> candidate_assignments(const Instance& inst) {
  std::vector<Assignment> out;
  out.reserve(inst.opportunities.size());
  for (std::size_t k = 0; k < inst.opportunities.size(); ++k) {
    const AvailableOpportunity& o = inst.opportunities[k];
    out.push_back({o.satellite_id, o.task_id, k, o.start_s});
  }
  return out;
}

CompatibilityVerdict compatible(const Assignment& a, const Assignment& b, const Instance& inst) {
  if (a.task_id == b.task_id) return {false, ConflictReason::kSameTask};
  if (a.satellite_id != b.satellite_id) return {true, ConflictReason::kOk};
  if (a.opportunity >= inst.opportunities.size() || b.opportunity >= inst.opportunities.size()) {
    throw StructuralError("opportunity index out of range");
  }
  const double a_end = inst.opportunities[a.opportunity].end_s;
  const double b_end = inst.opportunities[b.opportunity].end_s;
  if (a.start_s <= b_end && b.start_s <= a_end) return {false, ConflictReason::kTemporalOverlap};
  const bool a_first = a_end < b.start_s;
  const Assignment& first = a_first ? a : b;
  const Assignment& second = a_first ? b : a;
  const double gap = second.start_s - (a_first ? a_end : b_end);
  if (gap < min_separation(first, second, inst)) {
    return {false, ConflictReason::kTransitionViolation};
  }
  return {true, ConflictReason::kOk};
}

ResourceLedger resource_usage(const Schedule& schedule, const Instance& inst) {
  const InstanceIndex index(inst);
  return ledger_for(resolve(schedule, index), index);
}

FeasibilityReport validate_schedule(const Schedule& schedule, const Instance& inst) {
  const InstanceIndex index(inst);
  const std::vector<int> opps = resolve(schedule, index);
  FeasibilityReport rep;

  std::map<int, int> per_task;
  for (int o : opps) ++per_task[index.opp(o).task];
  for (const auto& [t, n] : per_task) {
    if (n > 1) {
      rep.violations.push_back({ViolationKind::kTaskUniqueness,
                                "task " + inst.tasks[t].id + " assigned " + std::to_string(n) + " times"});
    }
  }

  std::vector<std::vector<int>> per_sat(index.satellite_count());
  for (int o : opps) per_sat[index.opp(o).sat].push_back(o);
  const double reach = index.max_transition_s() + kTimeTol;
  for (auto& list : per_sat) {
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      if (index.opp(a).start != index.opp(b).start) return index.opp(a).start < index.opp(b).start;
      return a < b;
    });
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        const InstanceIndex::Opp& a = index.opp(list[i]);
        const InstanceIndex::Opp& b = index.opp(list[j]);
        if (b.start > a.end + reach) break;
        if (a.task == b.task) continue;
        const CompatibilityVerdict v = index.compatible(list[i], list[j]);
        if (!v.compatible) {
          rep.violations.push_back(
              {ViolationKind::kCompatibility,
               std::string(to_string(v.reason)) + ": " + inst.tasks[a.task].id + "@" + fmt(a.start) +
                   " vs " + inst.tasks[b.task].id + "@" + fmt(b.start) + " on " +
                   inst.satellites[a.sat].id});
        }
      }
    }
  }

  rep.ledger = ledger_for(opps, index);
  for (std::size_t s = 0; s < rep.ledger.segments.size(); ++s) {
    const ResourceCapacities& cap = inst.satellites[s].capacities;
    for (std::size_t k = 0; k < rep.ledger.segments[s].size(); ++k) {
      const LedgerSegment& seg = rep.ledger.segments[s][k];
      const std::string where = inst.satellites[s].id + " segment " + std::to_string(k);
      if (exceeds(seg.energy_used, cap.energy_per_orbit)) {
        rep.violations.push_back({ViolationKind::kEnergy, where + ": energy " + fmt(seg.energy_used) +
                                                              " > " + fmt(cap.energy_per_orbit)});
      }
      if (exceeds(seg.memory_used, cap.storage_per_orbit)) {
        rep.violations.push_back({ViolationKind::kMemory, where + ": memory " + fmt(seg.memory_used) +
                                                              " > " + fmt(cap.storage_per_orbit)});
      }
    }
  }
  rep.pass = rep.violations.empty();
  return rep;
}

std::string feasibility_report_json(const FeasibilityReport& rep) {
  using nlohmann::json;
  static const char* kinds[] = {"compatibility", "task_uniqueness", "energy", "memory"};
  json vs = json::array();
  for (const FeasibilityViolation& v : rep.violations) {
    vs.push_back({{"kind", kinds[static_cast<int>(v.kind)]}, {"witness", v.witness}});
  }
  json ledger = json::array();
  for (std::size_t s = 0; s < rep.ledger.segments.size(); ++s) {
    json segs = json::array();
    for (const LedgerSegment& g : rep.ledger.segments[s]) {
      if (g.energy_used == 0 && g.memory_used == 0) continue;
      segs.push_back({{"start_s", g.start_s}, {"end_s", g.end_s}, {"energy_used", g.energy_used},
                      {"memory_used", g.memory_used}});
    }
    ledger.push_back({{"satellite_id", rep.ledger.satellite_ids[s]},
                      {"segment_count", rep.ledger.segments[s].size()},
                      {"used_segments", std::move(segs)}});
  }
  json doc = {{"schema_version", kSchemaVersion},
              {"type", "feasibility_report"},
              {"status", rep.pass ? "PASS" : "FAIL"},
              {"violations", std::move(vs)},
              {"ledger_conventions", kLedgerConventions},
              {"ledger", std::move(ledger)}};
  return doc.dump(1) + "\n";
}

}  // namespace eosb
