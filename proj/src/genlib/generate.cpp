#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "eosb/astro.hpp"
#include "eosb/genlib.hpp"
#include "eosb/kinematics.hpp"
#include "eosb/random.hpp"

namespace eosb {
namespace {

constexpr double kLowScale = 0.5;
constexpr double kHighScale = 1.5;

// Pools are pure functions of (distribution, master seed); build each once.
const TargetPool& cached_pool(Distribution d, std::uint64_t master_seed) {
  static std::mutex mu;
  static std::map<std::pair<int, std::uint64_t>, std::unique_ptr<TargetPool>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{static_cast<int>(d), master_seed}];
  if (!slot) slot = std::make_unique<TargetPool>(build_target_pool(d, master_seed));
  return *slot;
}

// (high, standard, low) shares of the mixed patterns.
std::array<double, 3> mixed_shares(CapacityPattern c) {
  switch (c) {
    case CapacityPattern::kMixedA: return {0.2, 0.6, 0.2};
    case CapacityPattern::kMixedB: return {0.25, 0.5, 0.25};
    case CapacityPattern::kMixedC: return {0.3, 0.4, 0.3};
    default: return {0.0, 1.0, 0.0};
  }
}

// Largest-remainder apportionment; ties go to the earlier class.
std::array<int, 3> apportion(const std::array<double, 3>& shares, int n) {
  std::array<int, 3> counts{};
  std::array<double, 3> rem{};
  int assigned = 0;
  for (int k = 0; k < 3; ++k) {
    const double exact = shares[k] * n;
    counts[k] = static_cast<int>(std::floor(exact + 1e-9));
    rem[k] = exact - counts[k];
    assigned += counts[k];
  }
  while (assigned < n) {
    int best = 0;
    for (int k = 1; k < 3; ++k) {
      if (rem[k] > rem[best] + 1e-12) best = k;
    }
    ++counts[best];
    rem[best] = -1.0;
    ++assigned;
  }
  return counts;
}

void scale(SatelliteSpec& s, double factor) {
  s.capacities.energy_per_orbit *= factor;
  s.capacities.storage_per_orbit *= factor;
}

void apply_capacity(const ScenarioTemplate& tpl, std::vector<SatelliteSpec>& sats) {
  switch (tpl.capacity) {
    case CapacityPattern::kStandard: return;
    case CapacityPattern::kLow:
      for (SatelliteSpec& s : sats) scale(s, kLowScale);
      return;
    case CapacityPattern::kHigh:
      for (SatelliteSpec& s : sats) scale(s, kHighScale);
      return;
    default: break;
  }
  const std::array<int, 3> counts = apportion(mixed_shares(tpl.capacity), static_cast<int>(sats.size()));
  std::vector<std::size_t> order(sats.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(mix_seed({hash_string(tpl.id), 0xca9aU}));
  rng.shuffle(order);
  std::size_t pos = 0;
  for (int i = 0; i < counts[0]; ++i) scale(sats[order[pos++]], kHighScale);
  pos += static_cast<std::size_t>(counts[1]);
  for (int i = 0; i < counts[2]; ++i) scale(sats[order[pos++]], kLowScale);
}

}  // namespace

std::vector<SatelliteSpec> template_satellites(const ScenarioTemplate& tpl) {
  std::vector<SatelliteSpec> sats;
  const ConstellationSpec& c = tpl.constellation;
  if (c.walker) {
    sats = build_walker(c.total(), c.config.planes, c.config.per_plane,
                        real_satellites().front().elements);
  } else {
    const auto& table = real_satellites();
    if (c.real_count < 1 || c.real_count > static_cast<int>(table.size())) {
      throw DomainError("real constellation size must be 1.." + std::to_string(table.size()));
    }
    for (int i = 0; i < c.real_count; ++i) {
      SatelliteSpec s;
      s.id = table[i].name;
      s.elements = table[i].elements;
      sats.push_back(std::move(s));
    }
  }
  for (SatelliteSpec& s : sats) {
    s.envelope = AttitudeEnvelope::for_platform(tpl.platform);
    s.agility = agility_profile(tpl.agility);
  }
  apply_capacity(tpl, sats);
  return sats;
}

Instance generate_instance(const ScenarioTemplate& tpl, int seed_index, const GenerateOptions& options) {
  if (seed_index < 0 || seed_index >= TargetPool::kSubsets) {
    throw DomainError("seed index must be 0.." + std::to_string(TargetPool::kSubsets - 1));
  }
  if (tpl.task_count < 1) throw DomainError("template needs at least one task");
  if (!(tpl.horizon_s > 0)) throw DomainError("template horizon must be positive");

  Instance inst;
  inst.id = tpl.id + "-seed" + std::to_string(seed_index);
  inst.kind = InstanceKind::kGenerated;
  inst.horizon_s = tpl.horizon_s;
  inst.platform = tpl.platform;
  inst.epoch = kDefaultEpoch;
  inst.slot_step_s = tpl.slot_step_s.value_or(tpl.task_count > 1000 ? 5.0 : 1.0);
  inst.satellites = template_satellites(tpl);

  const TargetPool& pool = cached_pool(tpl.distribution, options.master_seed);
  const std::vector<GeoPoint> targets = select_targets(pool, seed_index, tpl.task_count);
  const std::uint64_t attr_seed = mix_seed(
      {options.master_seed, 0x7a5cU, static_cast<std::uint64_t>(tpl.distribution),
       static_cast<std::uint64_t>(seed_index)});
  inst.tasks = assign_attributes(targets, attr_seed);

  try {
    inst.visible_windows = compute_all_windows(inst.satellites, inst.tasks, inst.horizon_s,
                                               tpl.window_step_s, std::max(1, options.threads));
  } catch (const std::exception& e) {
    throw GenerationError(inst.id + ": window generation failed: " + e.what());
  }
  std::unordered_map<std::string, int> duration;
  for (const TaskSpec& t : inst.tasks) duration[t.id] = t.duration_s;
  double projected = 0;
  for (const VisibleWindow& w : inst.visible_windows) {
    projected += std::floor((w.end_s - w.start_s) / inst.slot_step_s) + 1;
  }
  if (projected > static_cast<double>(options.max_opportunities)) {
    throw GenerationError(inst.id + ": about " + std::to_string(static_cast<long long>(projected)) +
                          " opportunities exceed the limit of " +
                          std::to_string(options.max_opportunities));
  }
  for (std::size_t w = 0; w < inst.visible_windows.size(); ++w) {
    const VisibleWindow& win = inst.visible_windows[w];
    const auto task = duration.find(win.task_id);
    if (task == duration.end()) {
      throw GenerationError(inst.id + ": window for unknown task " + win.task_id + " on " +
                            win.satellite_id);
    }
    std::vector<AvailableOpportunity> opps =
        derive_opportunities(win, task->second, inst.slot_step_s, w);
    inst.opportunities.insert(inst.opportunities.end(), opps.begin(), opps.end());
  }

  inst.provenance.scenario_id = tpl.id;
  inst.provenance.seed = seed_index;
  inst.provenance.note = "master_seed=" + std::to_string(options.master_seed) + " distribution=" +
                         std::string(to_string(tpl.distribution)) + " subset=" +
                         std::to_string(seed_index);
  return inst;
}

}  // namespace eosb
