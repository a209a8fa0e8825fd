#include <algorithm>

#include "eosb/feaslib.hpp"
#include "eosb/kinematics.hpp"

namespace eosb {

PlanState::PlanState(const InstanceIndex& index)
    : index_(&index),
      task_opp_(index.task_count(), -1),
      timeline_(index.satellite_count()),
      energy_(index.satellite_count()),
      memory_(index.satellite_count()),
      sat_count_(index.satellite_count(), 0) {
  for (int s = 0; s < index.satellite_count(); ++s) {
    energy_[s].assign(index.segment_count(s), 0.0);
    memory_[s].assign(index.segment_count(s), 0.0);
  }
}

void PlanState::clear() {
  for (int t = 0; t < index_->task_count(); ++t) task_opp_[t] = -1;
  for (int s = 0; s < index_->satellite_count(); ++s) {
    timeline_[s].clear();
    std::fill(energy_[s].begin(), energy_[s].end(), 0.0);
    std::fill(memory_[s].begin(), memory_[s].end(), 0.0);
    sat_count_[s] = 0;
  }
  count_ = 0;
  profit_ = 0;
  start_frac_ = 0;
}

std::size_t PlanState::position(int sat, int opp) const {
  const auto& tl = timeline_[sat];
  const double start = index_->opp(opp).start;
  return static_cast<std::size_t>(
      std::lower_bound(tl.begin(), tl.end(), opp,
                       [&](int e, int) {
                         const double es = index_->opp(e).start;
                         return es < start || (es == start && e < opp);
                       }) -
      tl.begin());
}

bool PlanState::conflicts_with_neighbours(int sat, std::size_t pos, int opp) const {
  const auto& tl = timeline_[sat];
  const InstanceIndex::Opp& x = index_->opp(opp);
  const double reach = index_->max_transition_s() + 1e-9;
  for (std::size_t i = pos; i-- > 0;) {
    if (index_->opp(tl[i]).start < x.start - index_->max_duration_s() - reach) break;
    if (!index_->compatible(tl[i], opp).compatible) return true;
  }
  for (std::size_t i = pos; i < tl.size(); ++i) {
    if (index_->opp(tl[i]).start > x.end + reach) break;
    if (!index_->compatible(tl[i], opp).compatible) return true;
  }
  return false;
}

double PlanState::energy_delta(int sat, int seg, std::size_t pos, int opp) const {
  const auto& tl = timeline_[sat];
  const InstanceIndex::Opp& x = index_->opp(opp);
  LookAngles before;
  if (pos > 0 && index_->segment_of(sat, index_->opp(tl[pos - 1]).start) == seg) {
    before = index_->opp(tl[pos - 1]).end_att;
  }
  double d = observation_energy(*index_, opp, before);
  if (pos < tl.size() && index_->segment_of(sat, index_->opp(tl[pos]).start) == seg) {
    const LookAngles& next = index_->opp(tl[pos]).start_att;
    const double slew = index_->instance().satellites[sat].rates.slew_energy_rate;
    d += slew * (delta_g(x.end_att, next) - delta_g(before, next));
  }
  return d;
}

bool PlanState::can_insert(int opp) const {
  const InstanceIndex::Opp& x = index_->opp(opp);
  if (task_opp_[x.task] >= 0) return false;
  if (energy_[x.sat].empty()) return false;
  const std::size_t pos = position(x.sat, opp);
  if (conflicts_with_neighbours(x.sat, pos, opp)) return false;
  const SatelliteSpec& sat = index_->instance().satellites[x.sat];
  const int seg = index_->segment_of(x.sat, x.start);
  const double mem = memory_[x.sat][seg] + (x.end - x.start) * sat.rates.obs_memory_rate;
  if (mem > sat.capacities.storage_per_orbit) return false;
  const double energy = energy_[x.sat][seg] + energy_delta(x.sat, seg, pos, opp);
  return energy <= sat.capacities.energy_per_orbit;
}

namespace {

// Recomputes one segment in timeline order, matching the validator's sum.
void recompute(const InstanceIndex& index, int sat, int seg, const std::vector<int>& tl,
               double& energy, double& memory) {
  energy = 0;
  memory = 0;
  LookAngles prev;
  const double mem_rate = index.instance().satellites[sat].rates.obs_memory_rate;
  for (int o : tl) {
    const InstanceIndex::Opp& x = index.opp(o);
    if (index.segment_of(sat, x.start) != seg) continue;
    energy += observation_energy(index, o, prev);
    memory += (x.end - x.start) * mem_rate;
    prev = x.end_att;
  }
}

}  // namespace

void PlanState::insert(int opp) {
  const InstanceIndex::Opp& x = index_->opp(opp);
  auto& tl = timeline_[x.sat];
  tl.insert(tl.begin() + static_cast<std::ptrdiff_t>(position(x.sat, opp)), opp);
  task_opp_[x.task] = opp;
  const int seg = index_->segment_of(x.sat, x.start);
  recompute(*index_, x.sat, seg, tl, energy_[x.sat][seg], memory_[x.sat][seg]);
  ++sat_count_[x.sat];
  ++count_;
  profit_ += index_->profit(x.task);
  start_frac_ += x.start / index_->horizon_s();
}

void PlanState::remove_task(int task) {
  const int opp = task_opp_[task];
  if (opp < 0) return;
  const InstanceIndex::Opp& x = index_->opp(opp);
  auto& tl = timeline_[x.sat];
  tl.erase(std::find(tl.begin(), tl.end(), opp));
  task_opp_[task] = -1;
  const int seg = index_->segment_of(x.sat, x.start);
  recompute(*index_, x.sat, seg, tl, energy_[x.sat][seg], memory_[x.sat][seg]);
  --sat_count_[x.sat];
  --count_;
  profit_ -= index_->profit(task);
  start_frac_ -= x.start / index_->horizon_s();
  if (count_ == 0) start_frac_ = 0;
}

std::vector<int> PlanState::assigned_opps() const {
  std::vector<int> out;
  for (int t = 0; t < index_->task_count(); ++t) {
    if (task_opp_[t] >= 0) out.push_back(task_opp_[t]);
  }
  return out;
}

Schedule PlanState::to_schedule(const std::string& solver) const {
  Schedule s;
  s.instance_id = index_->instance().id;
  s.solver = solver;
  for (int o : assigned_opps()) s.assignments.push_back(index_->to_assignment(o));
  return s;
}

}  // namespace eosb
