#include <cmath>
#include <cstdio>
#include <string>

#include "eosb/astro.hpp"
#include "eosb/genlib.hpp"

namespace eosb {
namespace {

constexpr double kDeg = kPi / 180.0;

template <typename E, std::size_t N>
E parse_enum(std::string_view s, const E (&values)[N], const char* what) {
  for (E v : values) {
    if (to_string(v) == s) return v;
  }
  throw DomainError("unknown " + std::string(what) + " '" + std::string(s) + "'");
}

OrbitalElements el(double a, double e, double i, double raan, double argp, double nu) {
  OrbitalElements o;
  o.semi_major_axis_km = a;
  o.eccentricity = e;
  o.inclination_deg = i;
  o.raan_deg = raan;
  o.arg_perigee_deg = argp;
  o.true_anomaly_deg = nu;
  return o;
}

}  // namespace

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::kGlobalRandom: return "global";
    case Distribution::kRegionClustered: return "clustered";
    case Distribution::kHybrid: return "hybrid";
    case Distribution::kRealCities: return "cities";
  }
  return "global";
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::kStandard: return "standard";
    case Family::kCapacity: return "capacity";
    case Family::kManoeuvrability: return "agility";
    case Family::kConstellation: return "constellation";
    case Family::kRealistic: return "realistic";
  }
  return "standard";
}

std::string_view to_string(CapacityPattern c) {
  switch (c) {
    case CapacityPattern::kStandard: return "standard";
    case CapacityPattern::kLow: return "low";
    case CapacityPattern::kHigh: return "high";
    case CapacityPattern::kMixedA: return "mixed_a";
    case CapacityPattern::kMixedB: return "mixed_b";
    case CapacityPattern::kMixedC: return "mixed_c";
  }
  return "standard";
}

std::string_view to_string(WalkerVariant v) {
  switch (v) {
    case WalkerVariant::kDefault: return "default";
    case WalkerVariant::kFewPlanes: return "few_planes";
    case WalkerVariant::kManyPlanes: return "many_planes";
  }
  return "default";
}

Distribution parse_distribution(std::string_view s) {
  static const Distribution all[] = {Distribution::kGlobalRandom, Distribution::kRegionClustered,
                                     Distribution::kHybrid, Distribution::kRealCities};
  return parse_enum(s, all, "distribution");
}

Family parse_family(std::string_view s) {
  static const Family all[] = {Family::kStandard, Family::kCapacity, Family::kManoeuvrability,
                               Family::kConstellation, Family::kRealistic};
  return parse_enum(s, all, "family");
}

CapacityPattern parse_capacity_pattern(std::string_view s) {
  static const CapacityPattern all[] = {CapacityPattern::kStandard, CapacityPattern::kLow,
                                        CapacityPattern::kHigh,     CapacityPattern::kMixedA,
                                        CapacityPattern::kMixedB,   CapacityPattern::kMixedC};
  return parse_enum(s, all, "capacity pattern");
}

WalkerVariant parse_walker_variant(std::string_view s) {
  static const WalkerVariant all[] = {WalkerVariant::kDefault, WalkerVariant::kFewPlanes,
                                      WalkerVariant::kManyPlanes};
  return parse_enum(s, all, "walker variant");
}

const std::vector<RealSatellite>& real_satellites() {
  static const std::vector<RealSatellite> table = {
      {"ALOS-2", el(7013.62362, 0.000898, 98.04, 57.345, 101.516, 96.459)},
      {"AQUA", el(7054.608686, 0.002665, 98.264, 282.658, 100.906, 181.914)},
      {"CARTOSAT-2C", el(6885.388452, 0.002331, 97.526, 19.64, 129.493, 269.449)},
      {"DEIMOS-1", el(7026.003591, 0.001598, 97.832, 123.909, 99.999, 287.41)},
      {"DEIMOS-2", el(6955.196768, 0.002894, 97.569, 198.785, 83.505, 180.934)},
      {"GAOFEN_10R", el(7004.506326, 0.002046, 97.874, 269.586, 82.424, 282.074)},
      {"GOKTURK_1A", el(7061.790586, 0.001387, 98.061, 214.868, 112.033, 286.074)},
      {"GPM-CORE", el(6801.857205, 0.001294, 64.827, 293.591, 284.823, 176.995)},
      {"KENT_RIDGE_1", el(6884.956782, 0.000964, 15.043, 31.097, 207.516, 57.259)},
      {"SCD_1", el(7121.14563, 0.003755, 25.1, 68.138, 73.8, 157.166)},
      {"SCD_2", el(7123.258992, 0.001882, 24.859, 291.105, 37.112, 275.948)},
      {"SKYSAT-C2", el(6833.433187, 0.00167, 97.006, 347.712, 69.009, 149.715)},
      {"SKYSAT-C9", el(6825.950288, 0.00325, 97.567, 92.251, 106.838, 162.537)},
      {"SMOS", el(7129.70257, 0.000962, 98.521, 147.596, 18.842, 100.232)},
      {"SRMSAT", el(7236.742741, 0.002142, 19.826, 254.192, 78.797, 37.063)},
      {"TERRASAR-X", el(6877.192296, 0.000926, 97.37, 327.892, 6.52, 107.452)},
      {"WORLDVIEW-1", el(6874.558678, 0.001374, 97.524, 79.993, 89.387, 281.492)},
      {"YAOGAN_21", el(6866.60274, 0.003193, 97.197, 6.525, 115.547, 184.675)},
      {"YAOGAN_4", el(6993.513131, 0.00264, 97.779, 252.523, 84.41, 221.626)},
      {"ZIYUAN_3-2", el(6866.915774, 0.002603, 97.497, 36.721, 72.615, 202.817)},
  };
  return table;
}

const std::vector<std::pair<int, std::vector<int>>>& mission_load_table() {
  static const std::vector<std::pair<int, std::vector<int>>> table = {
      {1, {10, 20, 30, 40, 50, 100}},
      {3, {10, 50, 100, 200}},
      {5, {50, 100, 200, 500}},
      {10, {100, 200, 500, 1000}},
      {20, {100, 200, 500, 1000}},
      {50, {50, 100, 150, 200, 500}},
      {100, {100, 300, 500, 1000, 2000}},
      {200, {200, 500, 1000, 1500, 2000}},
      {500, {500, 1000, 1500, 2000, 5000}},
      {1000, {1000, 2000, 5000, 10000}},
  };
  return table;
}

bool task_count_admissible(int satellites, int tasks) {
  for (const auto& [s, counts] : mission_load_table()) {
    if (s != satellites) continue;
    for (int t : counts) {
      if (t == tasks) return true;
    }
  }
  return false;
}

WalkerConfig walker_config(int satellites, WalkerVariant variant) {
  struct Row {
    int total;
    WalkerConfig configs[3];
  };
  static const Row rows[] = {
      {50, {{10, 5}, {5, 10}, {25, 2}}},
      {100, {{10, 10}, {4, 25}, {20, 5}}},
      {200, {{20, 10}, {10, 20}, {40, 5}}},
      {500, {{25, 20}, {10, 50}, {50, 10}}},
      {1000, {{50, 20}, {10, 100}, {100, 10}}},
  };
  for (const Row& r : rows) {
    if (r.total == satellites) return r.configs[static_cast<int>(variant)];
  }
  throw DomainError("no Walker configuration for " + std::to_string(satellites) + " satellites");
}

WalkerConfig default_walker_config(int satellites) {
  return walker_config(satellites, WalkerVariant::kDefault);
}

std::vector<SatelliteSpec> build_walker(int total, int planes, int per_plane,
                                        const OrbitalElements& seed, const std::string& prefix) {
  if (planes <= 0 || per_plane <= 0 || planes * per_plane != total) {
    throw DomainError("Walker pattern " + std::to_string(planes) + "x" + std::to_string(per_plane) +
                      " does not give " + std::to_string(total) + " satellites");
  }
  const double e = seed.eccentricity;
  const double m0 = true_to_mean_anomaly(seed.true_anomaly_deg * kDeg, e) / kDeg;
  std::vector<SatelliteSpec> out;
  out.reserve(static_cast<std::size_t>(total));
  for (int p = 0; p < planes; ++p) {
    for (int k = 0; k < per_plane; ++k) {
      SatelliteSpec s;
      char id[48];
      std::snprintf(id, sizeof id, "%s-P%02d-S%02d", prefix.c_str(), p + 1, k + 1);
      s.id = id;
      s.elements = seed;
      s.elements.raan_deg = normalize_deg(seed.raan_deg + p * 360.0 / planes);
      const double m = m0 + k * 360.0 / per_plane + p * 360.0 / total;
      s.elements.true_anomaly_deg = normalize_deg(mean_to_true_anomaly(m * kDeg, e) / kDeg);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace eosb
