#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>

#include "eosb/genlib.hpp"
#include "eosb/random.hpp"

namespace eosb {
namespace {

constexpr int kPoolSize = 10000;
constexpr int kCentresPerRegion = 4;
constexpr double kClusterSigmaDeg = 4.0;

GeoPoint random_land_point(Rng& rng) {
  for (;;) {
    const double lat = std::asin(rng.uniform(-1.0, 1.0)) * 180.0 / kPi;
    const double lon = rng.uniform(-180.0, 180.0);
    if (on_land(lat, lon)) return {lat, lon};
  }
}

bool in_region(const Region& r, double lat, double lon) {
  return lat >= r.lat_lo && lat <= r.lat_hi && lon >= r.lon_lo && lon <= r.lon_hi;
}

class ClusterSampler {
 public:
  explicit ClusterSampler(std::uint64_t seed) : rng_(seed) {
    for (const Region& r : continental_regions()) {
      for (int c = 0; c < kCentresPerRegion; ++c) {
        GeoPoint p;
        do {
          p = {rng_.uniform(r.lat_lo, r.lat_hi), rng_.uniform(r.lon_lo, r.lon_hi)};
        } while (!on_land(p.lat_deg, p.lon_deg));
        centres_.push_back({&r, p});
      }
    }
  }

  GeoPoint next() {
    const Centre& c = centres_[rng_.index(centres_.size())];
    const double coslat = std::max(0.2, std::cos(c.point.lat_deg * kPi / 180.0));
    for (;;) {
      const double lat = c.point.lat_deg + kClusterSigmaDeg * rng_.normal();
      const double lon = c.point.lon_deg + kClusterSigmaDeg * rng_.normal() / coslat;
      if (in_region(*c.region, lat, lon) && on_land(lat, lon)) return {lat, lon};
    }
  }

 private:
  struct Centre {
    const Region* region;
    GeoPoint point;
  };
  Rng rng_;
  std::vector<Centre> centres_;
};

const RealCity kRealCityRows[] = {
#include "real_cities_data.inc"
};

}  // namespace

const std::array<Region, 5>& continental_regions() {
  static const std::array<Region, 5> regions = {{
      {"asia", 5, 55, 60, 145},
      {"europe", 36, 70, -10, 40},
      {"africa", -35, 35, -18, 50},
      {"americas", -55, 60, -125, -35},
      {"oceania", -47, -10, 110, 180},
  }};
  return regions;
}

const std::vector<RealCity>& real_cities() {
  static const std::vector<RealCity> table(std::begin(kRealCityRows), std::end(kRealCityRows));
  return table;
}

std::vector<GeoPoint> TargetPool::subset(int k) const {
  if (k < 0 || k >= kSubsets) throw DomainError("subset index out of range");
  const auto first = points.begin() + static_cast<std::ptrdiff_t>(k) * subset_size;
  return {first, first + subset_size};
}

TargetPool build_target_pool(Distribution distribution, std::uint64_t master_seed) {
  TargetPool pool;
  pool.distribution = distribution;
  pool.master_seed = master_seed;
  switch (distribution) {
    case Distribution::kGlobalRandom: {
      Rng rng(mix_seed({master_seed, 1}));
      for (int i = 0; i < kPoolSize; ++i) pool.points.push_back(random_land_point(rng));
      break;
    }
    case Distribution::kRegionClustered: {
      ClusterSampler sampler(mix_seed({master_seed, 2}));
      for (int i = 0; i < kPoolSize; ++i) pool.points.push_back(sampler.next());
      break;
    }
    case Distribution::kHybrid: {
      Rng rng(mix_seed({master_seed, 3, 0}));
      ClusterSampler sampler(mix_seed({master_seed, 3, 1}));
      for (int i = 0; i < kPoolSize; ++i) {
        pool.points.push_back(i % 2 == 0 ? random_land_point(rng) : sampler.next());
      }
      break;
    }
    case Distribution::kRealCities:
      for (const RealCity& c : real_cities()) pool.points.push_back({c.lat_deg, c.lon_deg});
      break;
  }
  pool.subset_size = static_cast<int>(pool.points.size()) / TargetPool::kSubsets;
  return pool;
}

std::vector<GeoPoint> select_targets(const TargetPool& pool, int subset, int count) {
  if (subset < 0 || subset >= TargetPool::kSubsets) throw DomainError("subset index out of range");
  if (count < 0 || count > static_cast<int>(pool.points.size())) {
    throw DomainError("requested " + std::to_string(count) + " targets from a pool of " +
                      std::to_string(pool.points.size()));
  }
  const std::size_t n = pool.points.size();
  const std::size_t first = static_cast<std::size_t>(subset) * pool.subset_size;
  std::vector<GeoPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(pool.points[(first + i) % n]);
  return out;
}

std::vector<TaskSpec> assign_attributes(const std::vector<GeoPoint>& targets, std::uint64_t seed,
                                        const std::string& id_prefix) {
  Rng rng(seed);
  std::vector<TaskSpec> out;
  out.reserve(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    TaskSpec t;
    char id[32];
    std::snprintf(id, sizeof id, "%05zu", i + 1);
    t.id = id_prefix + id;
    t.lat_deg = targets[i].lat_deg;
    t.lon_deg = targets[i].lon_deg;
    t.priority = static_cast<int>(rng.uniform_int(1, 10));
    t.profit = static_cast<int>(rng.uniform_int(1, 10));
    t.duration_s = static_cast<int>(rng.uniform_int(5, 15));
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace eosb
