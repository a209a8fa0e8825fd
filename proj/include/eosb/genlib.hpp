// Scenario space, target pools and the instance generator.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eosb/core.hpp"

namespace eosb {

enum class Distribution { kGlobalRandom, kRegionClustered, kHybrid, kRealCities };
enum class Family { kStandard, kCapacity, kManoeuvrability, kConstellation, kRealistic };
enum class CapacityPattern { kStandard, kLow, kHigh, kMixedA, kMixedB, kMixedC };
enum class WalkerVariant { kDefault, kFewPlanes, kManyPlanes };

std::string_view to_string(Distribution d);
std::string_view to_string(Family f);
std::string_view to_string(CapacityPattern c);
std::string_view to_string(WalkerVariant v);
Distribution parse_distribution(std::string_view s);
Family parse_family(std::string_view s);
CapacityPattern parse_capacity_pattern(std::string_view s);
WalkerVariant parse_walker_variant(std::string_view s);

struct RealSatellite {
  const char* name;
  OrbitalElements elements;
};
// The 20-satellite reference table, in table order.
const std::vector<RealSatellite>& real_satellites();

struct WalkerConfig {
  int planes = 0;
  int per_plane = 0;
};

struct ConstellationSpec {
  bool walker = false;
  int real_count = 0;  // first k rows of the real table
  WalkerConfig config;
  int total() const { return walker ? config.planes * config.per_plane : real_count; }
};

struct ScenarioTemplate {
  std::string id;
  Family family = Family::kStandard;
  Platform platform = Platform::kAgile;
  double horizon_s = 86400;
  ConstellationSpec constellation;
  int task_count = 0;
  Distribution distribution = Distribution::kGlobalRandom;
  CapacityPattern capacity = CapacityPattern::kStandard;
  AgilityName agility = AgilityName::kStandard;
  WalkerVariant walker_variant = WalkerVariant::kDefault;
  double window_step_s = 10;
  std::optional<double> slot_step_s;  // default: 1 s, or 5 s above 1000 tasks
};

// Admissible task counts per satellite count (mission-load table).
const std::vector<std::pair<int, std::vector<int>>>& mission_load_table();
bool task_count_admissible(int satellites, int tasks);
WalkerConfig default_walker_config(int satellites);
// Plane layout for the constellation-variant family; throws for unknown scales.
WalkerConfig walker_config(int satellites, WalkerVariant variant);

std::vector<SatelliteSpec> build_walker(int total, int planes, int per_plane,
                                        const OrbitalElements& seed, const std::string& prefix = "WD");

struct GeoPoint {
  double lat_deg = 0;
  double lon_deg = 0;
};

struct TargetPool {
  Distribution distribution = Distribution::kGlobalRandom;
  std::uint64_t master_seed = 0;
  std::vector<GeoPoint> points;  // subset k occupies [k*subset_size, (k+1)*subset_size)
  int subset_size = 1000;
  static constexpr int kSubsets = 10;
  std::vector<GeoPoint> subset(int k) const;
};

struct Region {
  const char* name;
  double lat_lo, lat_hi, lon_lo, lon_hi;
};
const std::array<Region, 5>& continental_regions();
bool on_land(double lat_deg, double lon_deg);

inline constexpr std::uint64_t kDefaultMasterSeed = 20251118;

TargetPool build_target_pool(Distribution distribution, std::uint64_t master_seed = kDefaultMasterSeed);
// First `count` targets of subset k. Counts beyond the subset size continue
// into subsets k+1, k+2, ... (cyclically), so smaller loads stay prefixes.
std::vector<GeoPoint> select_targets(const TargetPool& pool, int subset, int count);
std::vector<TaskSpec> assign_attributes(const std::vector<GeoPoint>& targets, std::uint64_t seed,
                                        const std::string& id_prefix = "T");

struct RealCity {
  const char* name;
  const char* country;
  double lat_deg;
  double lon_deg;
};
const std::vector<RealCity>& real_cities();

std::vector<ScenarioTemplate> enumerate_standard();
std::vector<ScenarioTemplate> enumerate_specific();
std::vector<ScenarioTemplate> enumerate_all();
// Looks a template up by id in the enumerated families.
std::optional<ScenarioTemplate> find_template(const std::string& id);
inline constexpr int kSeedsPerScenario = 10;

struct GenerateOptions {
  int threads = 1;
  std::uint64_t master_seed = kDefaultMasterSeed;
  // Generation fails with GenerationError beyond this many opportunities.
  std::size_t max_opportunities = 12'000'000;
};

// Satellites of a template after capacity/agility extras are applied.
std::vector<SatelliteSpec> template_satellites(const ScenarioTemplate& tpl);
Instance generate_instance(const ScenarioTemplate& tpl, int seed_index, const GenerateOptions& options = {});

std::string template_json(const ScenarioTemplate& tpl);
ScenarioTemplate parse_template_json(std::string_view bytes);

struct SubsampleRanges {
  int sat_min = 1, sat_max = 1;
  int task_min = 1, task_max = 1;
  double horizon_min_h = 1, horizon_max_h = 1;
};

struct SubsampleOptions {
  int max_attempts = 2000;
  double feasible_ratio = 0.5;
  std::uint64_t seed = 0;
};

Instance subsample_instance(const std::vector<Instance>& library, const SubsampleRanges& ranges,
                            const SubsampleOptions& options = {});

}  // namespace eosb
