#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "eosb/astro.hpp"
#include "eosb/genlib.hpp"
#include "eosb/serialize.hpp"

using namespace eosb;

namespace {

ScenarioTemplate small_template(int sats, int tasks, double horizon_s) {
  ScenarioTemplate t;
  t.id = "unit-" + std::to_string(sats) + "-" + std::to_string(tasks);
  t.horizon_s = horizon_s;
  t.constellation.real_count = sats;
  t.task_count = tasks;
  return t;
}

}  // namespace

TEST_CASE("standard and specific enumeration counts") {
  const auto standard = enumerate_standard();
  const auto specific = enumerate_specific();
  CHECK(standard.size() == 1104);
  CHECK(specific.size() == 286);
  CHECK((standard.size() + specific.size()) * kSeedsPerScenario == 13900);

  std::map<Family, int> per_family;
  for (const auto& t : specific) ++per_family[t.family];
  CHECK(per_family[Family::kCapacity] == 120);
  CHECK(per_family[Family::kManoeuvrability] == 36);
  CHECK(per_family[Family::kConstellation] == 120);
  CHECK(per_family[Family::kRealistic] == 10);
  for (const auto& t : specific) {
    if (t.family == Family::kManoeuvrability) CHECK(t.platform == Platform::kAgile);
  }

  std::set<std::string> ids;
  for (const auto& t : enumerate_all()) ids.insert(t.id);
  CHECK(ids.size() == 1390);
}

TEST_CASE("standard templates respect the mission-load table") {
  std::set<int> one_sat;
  for (const auto& t : enumerate_standard()) {
    CHECK(task_count_admissible(t.constellation.total(), t.task_count));
    if (t.constellation.total() == 1) one_sat.insert(t.task_count);
  }
  CHECK(one_sat == std::set<int>{10, 20, 30, 40, 50, 100});
  int combos = 0;
  for (const auto& row : mission_load_table()) combos += static_cast<int>(row.second.size());
  CHECK(combos == 46);
}

TEST_CASE("template json round trip and lookup") {
  const auto t = find_template("con-nonagile-h24-s100-t300-clustered-few-planes");
  REQUIRE(t.has_value());
  CHECK(t->constellation.walker);
  CHECK(t->constellation.config.planes == 4);
  CHECK(t->constellation.config.per_plane == 25);
  const ScenarioTemplate back = parse_template_json(template_json(*t));
  CHECK(back.id == t->id);
  CHECK(back.walker_variant == WalkerVariant::kFewPlanes);
  CHECK(back.constellation.config.per_plane == 25);
  CHECK(back.platform == Platform::kNonAgile);
  CHECK_FALSE(find_template("no-such-template").has_value());
  CHECK_THROWS_AS(parse_template_json("{\"schema_version\":1}"), ParseError);
}

TEST_CASE("walker 50 = 10 planes x 5") {
  const OrbitalElements seed = real_satellites().front().elements;
  const auto sats = build_walker(50, 10, 5, seed);
  REQUIRE(sats.size() == 50);
  std::set<long> raans;
  for (const auto& s : sats) {
    CHECK(s.elements.semi_major_axis_km == seed.semi_major_axis_km);
    CHECK(s.elements.inclination_deg == seed.inclination_deg);
    CHECK(s.elements.eccentricity == seed.eccentricity);
    raans.insert(std::lround(normalize_deg(s.elements.raan_deg - seed.raan_deg) * 1000));
  }
  CHECK(raans.size() == 10);
  long expect = 0;
  for (long r : raans) {
    CHECK(r == expect);
    expect += 36000;
  }
  // In-plane spacing in mean anomaly.
  const double e = seed.eccentricity;
  const double m0 = true_to_mean_anomaly(sats[0].elements.true_anomaly_deg * kPi / 180, e);
  const double m1 = true_to_mean_anomaly(sats[1].elements.true_anomaly_deg * kPi / 180, e);
  CHECK(normalize_deg((m1 - m0) * 180 / kPi) == doctest::Approx(72.0).epsilon(1e-9));
  // Inter-plane phasing of 360/50 degrees.
  const double m5 = true_to_mean_anomaly(sats[5].elements.true_anomaly_deg * kPi / 180, e);
  CHECK(normalize_deg((m5 - m0) * 180 / kPi) == doctest::Approx(7.2).epsilon(1e-9));
}

TEST_CASE("walker 1000 and 6-satellite layouts") {
  const OrbitalElements seed = real_satellites().front().elements;
  const auto big = build_walker(1000, 50, 20, seed);
  CHECK(big.size() == 1000);
  std::set<long> planes;
  for (const auto& s : big) planes.insert(std::lround(s.elements.raan_deg * 1e6));
  CHECK(planes.size() == 50);

  const auto six = build_walker(6, 2, 3, seed);
  for (const auto& a : six) {
    for (const auto& b : six) {
      const double d = normalize_deg(a.elements.raan_deg - b.elements.raan_deg);
      CHECK((std::abs(d) < 1e-9 || std::abs(d - 180.0) < 1e-9));
    }
  }
  CHECK_THROWS_AS(build_walker(50, 7, 7, seed), DomainError);
}

TEST_CASE("real satellite table") {
  const auto& table = real_satellites();
  REQUIRE(table.size() == 20);
  CHECK(std::string(table[0].name) == "ALOS-2");
  CHECK(table[0].elements.semi_major_axis_km == 7013.62362);
  CHECK(std::string(table[19].name) == "ZIYUAN_3-2");
}

TEST_CASE("global pool is on land, disjoint and reproducible") {
  const TargetPool a = build_target_pool(Distribution::kGlobalRandom, 7);
  const TargetPool b = build_target_pool(Distribution::kGlobalRandom, 7);
  REQUIRE(a.points.size() == 10000);
  CHECK(a.subset_size == 1000);
  std::set<std::pair<double, double>> seen;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(on_land(a.points[i].lat_deg, a.points[i].lon_deg));
    CHECK(a.points[i].lat_deg == b.points[i].lat_deg);
    CHECK(a.points[i].lon_deg == b.points[i].lon_deg);
    seen.insert({a.points[i].lat_deg, a.points[i].lon_deg});
  }
  CHECK(seen.size() == 10000);
  const TargetPool c = build_target_pool(Distribution::kGlobalRandom, 8);
  CHECK(c.points[0].lat_deg != a.points[0].lat_deg);
}

TEST_CASE("clustered pool stays inside the continental regions") {
  const TargetPool pool = build_target_pool(Distribution::kRegionClustered);
  REQUIRE(pool.points.size() == 10000);
  std::map<std::string, int> per_region;
  for (const GeoPoint& p : pool.points) {
    bool inside = false;
    for (const Region& r : continental_regions()) {
      if (p.lat_deg >= r.lat_lo && p.lat_deg <= r.lat_hi && p.lon_deg >= r.lon_lo &&
          p.lon_deg <= r.lon_hi) {
        inside = true;
        ++per_region[r.name];
      }
    }
    CHECK(inside);
    CHECK(on_land(p.lat_deg, p.lon_deg));
  }
  CHECK(per_region.size() == 5);
}

TEST_CASE("hybrid pool interleaves global and clustered draws") {
  const TargetPool pool = build_target_pool(Distribution::kHybrid);
  REQUIRE(pool.points.size() == 10000);
  int in_regions = 0;
  for (std::size_t i = 1; i < pool.points.size(); i += 2) {
    const GeoPoint& p = pool.points[i];
    for (const Region& r : continental_regions()) {
      if (p.lat_deg >= r.lat_lo && p.lat_deg <= r.lat_hi && p.lon_deg >= r.lon_lo &&
          p.lon_deg <= r.lon_hi) {
        ++in_regions;
        break;
      }
    }
  }
  CHECK(in_regions == 5000);
}

TEST_CASE("real city pool") {
  const TargetPool pool = build_target_pool(Distribution::kRealCities);
  CHECK(pool.points.size() == 1000);
  CHECK(pool.subset_size == 100);
  CHECK(real_cities().size() == 1000);
  std::set<std::pair<double, double>> seen;
  for (const GeoPoint& p : pool.points) seen.insert({p.lat_deg, p.lon_deg});
  CHECK(seen.size() == 1000);
}

TEST_CASE("land mask spot checks") {
  CHECK(on_land(48.85, 2.35));     // Paris
  CHECK(on_land(-15.8, -47.9));    // Brasilia
  CHECK(on_land(39.9, 116.4));     // Beijing
  CHECK(on_land(-33.9, 151.2) == on_land(-33.9, 151.2));
  CHECK_FALSE(on_land(0.0, -140.0));   // Pacific
  CHECK_FALSE(on_land(30.0, -40.0));   // Atlantic
  CHECK_FALSE(on_land(-20.0, 75.0));   // Indian Ocean
  CHECK_FALSE(on_land(43.0, 34.0));    // Black Sea
  CHECK_FALSE(on_land(-80.0, 0.0));    // Antarctica excluded
}

TEST_CASE("attribute bounds and means over 1e5 draws") {
  std::vector<GeoPoint> pts(100000, GeoPoint{10, 10});
  const auto tasks = assign_attributes(pts, 99);
  double sum = 0;
  for (const TaskSpec& t : tasks) {
    CHECK((t.priority >= 1 && t.priority <= 10));
    CHECK((t.profit >= 1 && t.profit <= 10));
    CHECK((t.duration_s >= 5 && t.duration_s <= 15));
    sum += t.duration_s;
  }
  CHECK(std::abs(sum / tasks.size() - 10.0) < 0.1);
  CHECK(assign_attributes(pts, 99) == tasks);
  CHECK(tasks.front().id == "T00001");
}

TEST_CASE("task sets nest by prefix as the load grows") {
  const TargetPool pool = build_target_pool(Distribution::kGlobalRandom);
  const auto small = select_targets(pool, 3, 100);
  const auto large = select_targets(pool, 3, 2500);
  for (std::size_t i = 0; i < small.size(); ++i) {
    CHECK(small[i].lat_deg == large[i].lat_deg);
    CHECK(small[i].lon_deg == large[i].lon_deg);
  }
  const auto subset = pool.subset(3);
  CHECK(large[999].lat_deg == subset[999].lat_deg);
  CHECK(large[1000].lat_deg == pool.subset(4)[0].lat_deg);

  ScenarioTemplate a = small_template(1, 10, 3600);
  ScenarioTemplate b = small_template(1, 30, 3600);
  const Instance ia = generate_instance(a, 2);
  const Instance ib = generate_instance(b, 2);
  for (std::size_t i = 0; i < ia.tasks.size(); ++i) CHECK(ia.tasks[i] == ib.tasks[i]);
}

TEST_CASE("mixed capacity A over ten satellites") {
  ScenarioTemplate t = small_template(10, 100, 3600);
  t.capacity = CapacityPattern::kMixedA;
  const auto sats = template_satellites(t);
  std::map<double, int> by_energy;
  for (const auto& s : sats) {
    ++by_energy[s.capacities.energy_per_orbit];
    CHECK(s.capacities.storage_per_orbit / s.capacities.energy_per_orbit == doctest::Approx(12.0));
  }
  CHECK(by_energy[300.0] == 2);
  CHECK(by_energy[200.0] == 6);
  CHECK(by_energy[100.0] == 2);

  t.capacity = CapacityPattern::kMixedC;
  by_energy.clear();
  for (const auto& s : template_satellites(t)) ++by_energy[s.capacities.energy_per_orbit];
  CHECK(by_energy[300.0] == 3);
  CHECK(by_energy[200.0] == 4);
  CHECK(by_energy[100.0] == 3);

  t.capacity = CapacityPattern::kLow;
  for (const auto& s : template_satellites(t)) CHECK(s.capacities.energy_per_orbit == 100.0);
}

TEST_CASE("agility extras and platform envelopes") {
  ScenarioTemplate t = small_template(3, 10, 3600);
  t.agility = AgilityName::kLimited;
  for (const auto& s : template_satellites(t)) {
    CHECK(s.agility.name == AgilityName::kLimited);
    CHECK(s.envelope.platform == Platform::kAgile);
  }
  t.platform = Platform::kNonAgile;
  for (const auto& s : template_satellites(t)) CHECK(s.envelope.max_pitch_deg == 0.0);
}

TEST_CASE("generation is deterministic and valid") {
  const auto tpl = find_template("std-agile-h24-s3-t100-global");
  REQUIRE(tpl.has_value());
  const Instance a = generate_instance(*tpl, 0);
  GenerateOptions threaded;
  threaded.threads = 4;
  const Instance b = generate_instance(*tpl, 0, threaded);
  CHECK(instance_digest(a) == instance_digest(b));
  CHECK(validate_instance(a).empty());
  CHECK(a.tasks.size() == 100);
  CHECK(a.satellites.size() == 3);
  CHECK(a.slot_step_s == 1.0);
  CHECK_FALSE(a.opportunities.empty());
  CHECK(a.provenance.scenario_id == tpl->id);
  const Instance c = generate_instance(*tpl, 1);
  CHECK(instance_digest(a) != instance_digest(c));
  CHECK_THROWS_AS(generate_instance(*tpl, 10), DomainError);
}

TEST_CASE("non-agile generation carries fixed rolls") {
  const auto tpl = find_template("std-nonagile-h12-s3-t50-clustered");
  REQUIRE(tpl.has_value());
  const Instance inst = generate_instance(*tpl, 0);
  CHECK(validate_instance(inst).empty());
  for (const auto& w : inst.visible_windows) {
    CHECK(w.fixed_roll_deg.has_value());
    CHECK(w.attitude_track.empty());
  }
}

TEST_CASE("opportunity budget is enforced") {
  const auto tpl = find_template("std-agile-h24-s10-t100-global");
  REQUIRE(tpl.has_value());
  GenerateOptions tight;
  tight.max_opportunities = 1000;
  CHECK_THROWS_AS(generate_instance(*tpl, 0, tight), GenerationError);
}

TEST_CASE("sub-sampling draws a smaller fresh instance") {
  const auto tpl = find_template("std-agile-h24-s10-t100-global");
  REQUIRE(tpl.has_value());
  const std::vector<Instance> library = {generate_instance(*tpl, 0)};

  SubsampleRanges r;
  r.sat_min = r.sat_max = 3;
  r.task_min = r.task_max = 20;
  r.horizon_min_h = r.horizon_max_h = 24;
  SubsampleOptions o;
  o.seed = 5;
  const Instance sub = subsample_instance(library, r, o);
  CHECK_FALSE(sub.provenance.fallback);
  CHECK(sub.satellites.size() == 3);
  CHECK(sub.tasks.size() == 20);
  CHECK(instance_digest(sub) != instance_digest(library[0]));
  CHECK(validate_instance(sub).empty());

  // Shorter horizon with a random shift still validates.
  r.horizon_min_h = 2;
  r.horizon_max_h = 6;
  o.feasible_ratio = 0.0;
  const Instance shifted = subsample_instance(library, r, o);
  CHECK_FALSE(shifted.provenance.fallback);
  CHECK(shifted.horizon_s <= 6 * 3600.0);
  CHECK(validate_instance(shifted).empty());
  CHECK(subsample_instance(library, r, o) == shifted);

  r.sat_min = r.sat_max = 2000;
  o.max_attempts = 20;
  const Instance fb = subsample_instance(library, r, o);
  CHECK(fb.provenance.fallback);
  CHECK(fb.tasks == library[0].tasks);
}

TEST_CASE("sub-sampled orbits stay consistent with the clipped windows") {
  const auto tpl = find_template("std-agile-h24-s3-t50-global");
  REQUIRE(tpl.has_value());
  const std::vector<Instance> library = {generate_instance(*tpl, 1)};
  SubsampleRanges r;
  r.sat_min = r.sat_max = 3;
  r.task_min = r.task_max = 50;
  r.horizon_min_h = r.horizon_max_h = 6;
  SubsampleOptions o;
  o.seed = 11;
  o.feasible_ratio = 0.0;
  const Instance sub = subsample_instance(library, r, o);
  REQUIRE_FALSE(sub.provenance.fallback);
  // Recomputing windows from the advanced elements matches the clipped ones
  // up to the sampling step at the clip edges.
  const auto fresh = compute_all_windows(sub.satellites, sub.tasks, sub.horizon_s);
  std::size_t matched = 0;
  for (const auto& w : sub.visible_windows) {
    for (const auto& f : fresh) {
      if (f.task_id == w.task_id && f.satellite_id == w.satellite_id &&
          std::abs(f.start_s - w.start_s) < 2.0 && std::abs(f.end_s - w.end_s) < 2.0) {
        ++matched;
        break;
      }
    }
  }
  CHECK(matched == sub.visible_windows.size());
}
