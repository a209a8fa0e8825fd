#include "doctest.h"
#include "eosb/feaslib.hpp"
#include "fixtures.hpp"

using namespace eosb;

namespace {

Assignment find(const std::vector<Assignment>& cands, const std::string& task, double start) {
  for (const Assignment& a : cands) {
    if (a.task_id == task && a.start_s == start) return a;
  }
  FAIL("no candidate " << task << "@" << start);
  return {};
}

Schedule schedule_of(const Instance& inst, std::vector<Assignment> as) {
  Schedule s;
  s.instance_id = inst.id;
  s.assignments = std::move(as);
  return s;
}

// One satellite, tasks of 10 s at the given starts with the given attitudes.
Instance line_instance(const std::vector<std::pair<double, LookAngles>>& obs, double energy = 200) {
  SyntheticSpec s;
  s.horizon_s = 5000;
  SatelliteSpec sat = synthetic_satellite("S1");
  sat.capacities.energy_per_orbit = energy;
  s.satellites = {sat};
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const std::string id = "T" + std::to_string(i);
    s.tasks.push_back({id, 10});
    const double t = obs[i].first;
    s.windows.push_back({id, "S1", t, t + 10, {{t, obs[i].second}, {t + 10, obs[i].second}}});
  }
  return build_synthetic_instance(s);
}

}  // namespace

TEST_CASE("toy candidates") {
  const Instance inst = testing::toy_instance();
  const auto cands = candidate_assignments(inst);
  CHECK(cands.size() == 6);
  std::map<std::string, int> per_task;
  for (const Assignment& a : cands) ++per_task[a.task_id];
  CHECK(per_task["A"] == 3);
  CHECK(per_task["B"] == 1);
  CHECK(per_task["C"] == 2);
  CHECK(per_task.count("D") == 0);
  CHECK(cands.size() == inst.opportunities.size());
}

TEST_CASE("empty instance has no candidates") {
  SyntheticSpec s;
  s.horizon_s = 10;
  CHECK(candidate_assignments(build_synthetic_instance(s)).empty());
}

TEST_CASE("compatibility verdicts on the toy") {
  const Instance inst = testing::toy_instance();
  const auto c = candidate_assignments(inst);
  const CompatibilityVerdict touch = compatible(find(c, "A", 0), find(c, "B", 3), inst);
  CHECK_FALSE(touch.compatible);
  CHECK(touch.reason == ConflictReason::kTemporalOverlap);
  const CompatibilityVerdict near = compatible(find(c, "A", 1), find(c, "B", 3), inst);
  CHECK(near.reason == ConflictReason::kTemporalOverlap);
  CHECK(compatible(find(c, "A", 0), find(c, "A", 5), inst).reason == ConflictReason::kSameTask);
  CHECK(compatible(find(c, "B", 3), find(c, "C", 6), inst).compatible);  // different satellites
  CHECK(compatible(find(c, "A", 5), find(c, "C", 6), inst).reason == ConflictReason::kTemporalOverlap);
}

TEST_CASE("transition gap decides compatibility") {
  const Instance inst = line_instance({{0, {}}, {110, {}}, {15, {}}});
  const auto c = candidate_assignments(inst);
  const CompatibilityVerdict far = compatible(c[0], c[1], inst);
  CHECK(far.compatible);
  CHECK(far.reason == ConflictReason::kOk);
  const CompatibilityVerdict close = compatible(c[0], c[2], inst);
  CHECK(close.reason == ConflictReason::kTransitionViolation);
}

TEST_CASE("compatibility is symmetric") {
  testing::RandomSpecOptions o;
  o.max_candidates = 40;
  o.max_slack_s = 20;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = testing::random_instance(seed, o);
    const auto c = candidate_assignments(inst);
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        const auto ab = compatible(c[i], c[j], inst);
        const auto ba = compatible(c[j], c[i], inst);
        CHECK(ab.compatible == ba.compatible);
        CHECK((ab.reason == ConflictReason::kOk) == ab.compatible);
      }
    }
  }
}

TEST_CASE("resource ledger") {
  SUBCASE("empty schedule") {
    const Instance inst = testing::toy_instance();
    const ResourceLedger l = resource_usage(schedule_of(inst, {}), inst);
    REQUIRE(l.segments.size() == 2);
    for (const auto& sat : l.segments) {
      for (const LedgerSegment& seg : sat) {
        CHECK(seg.energy_used == 0);
        CHECK(seg.memory_used == 0);
      }
    }
  }
  SUBCASE("single nadir observation") {
    const Instance inst = line_instance({{100, {}}});
    const ResourceLedger l = resource_usage(schedule_of(inst, candidate_assignments(inst)), inst);
    CHECK(l.segments[0][0].energy_used == doctest::Approx(10));
    CHECK(l.segments[0][0].memory_used == doctest::Approx(10));
  }
  SUBCASE("slew between two observations") {
    const Instance inst = line_instance({{100, {}}, {200, {20, 0, 0}}});
    const ResourceLedger l = resource_usage(schedule_of(inst, candidate_assignments(inst)), inst);
    CHECK(l.segments[0][0].energy_used == doctest::Approx(10 + 10 + 20));
    CHECK(l.segments[0][0].memory_used == doctest::Approx(20));
  }
  SUBCASE("segment count follows the orbital period") {
    const Instance inst = line_instance({{100, {}}});
    const double period = orbital_period_s(inst.satellites[0].elements);
    const ResourceLedger l = resource_usage(schedule_of(inst, {}), inst);
    CHECK(l.segments[0].size() == static_cast<std::size_t>(std::ceil(inst.horizon_s / period)));
  }
}

TEST_CASE("validator verdicts") {
  const Instance inst = testing::toy_instance();
  const auto c = candidate_assignments(inst);
  CHECK(validate_schedule(schedule_of(inst, {}), inst).pass);
  CHECK(validate_schedule(schedule_of(inst, {find(c, "A", 0), find(c, "C", 6)}), inst).pass);

  const FeasibilityReport twice = validate_schedule(schedule_of(inst, {find(c, "A", 0), find(c, "A", 5)}), inst);
  CHECK_FALSE(twice.pass);
  REQUIRE(twice.violations.size() == 1);
  CHECK(twice.violations[0].kind == ViolationKind::kTaskUniqueness);

  const FeasibilityReport clash = validate_schedule(schedule_of(inst, {find(c, "A", 0), find(c, "B", 3)}), inst);
  CHECK_FALSE(clash.pass);
  CHECK(clash.violations[0].kind == ViolationKind::kCompatibility);

  Schedule unknown = schedule_of(inst, {find(c, "A", 0)});
  unknown.assignments[0].satellite_id = "S9";
  CHECK_THROWS_AS(validate_schedule(unknown, inst), StructuralError);
}

TEST_CASE("energy budget violation") {
  std::vector<std::pair<double, LookAngles>> obs;
  for (int i = 0; i < 30; ++i) obs.push_back({i * 80.0, {i % 2 ? 40.0 : -40.0, 0, 0}});
  const Instance inst = line_instance(obs);
  const FeasibilityReport r = validate_schedule(schedule_of(inst, candidate_assignments(inst)), inst);
  CHECK_FALSE(r.pass);
  bool energy = false;
  for (const auto& v : r.violations) energy = energy || v.kind == ViolationKind::kEnergy;
  CHECK(energy);
}

TEST_CASE("validator agrees with a direct check on every subset") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = testing::random_instance(seed * 31 + 7);
    const auto c = candidate_assignments(inst);
    REQUIRE(c.size() <= 12);
    for (std::size_t mask = 0; mask < (std::size_t{1} << c.size()); ++mask) {
      std::vector<Assignment> sel;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (mask >> i & 1) sel.push_back(c[i]);
      }
      const bool expected = testing::direct_feasible(sel, inst);
      const bool got = validate_schedule(schedule_of(inst, sel), inst).pass;
      CAPTURE(seed);
      CAPTURE(mask);
      CHECK(got == expected);
    }
  }
}

TEST_CASE("plan state agrees with the validator") {
  testing::RandomSpecOptions o;
  o.max_tasks = 10;
  o.max_candidates = 60;
  o.max_slack_s = 20;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = testing::random_instance(seed, o);
    const InstanceIndex index(inst);
    PlanState plan(index);
    Rng rng(seed);
    for (int step = 0; step < 200; ++step) {
      const int opp = static_cast<int>(rng.index(static_cast<std::size_t>(std::max(1, index.opp_count()))));
      if (index.opp_count() == 0) break;
      const int task = index.opp(opp).task;
      if (plan.is_assigned(task)) {
        plan.remove_task(task);
        continue;
      }
      Schedule trial = plan.to_schedule("t");
      trial.assignments.push_back(index.to_assignment(opp));
      CHECK(plan.can_insert(opp) == validate_schedule(trial, inst).pass);
      if (plan.can_insert(opp)) plan.insert(opp);
    }
    CHECK(validate_schedule(plan.to_schedule("t"), inst).pass);
  }
}

TEST_CASE("feasibility is downward closed") {
  testing::RandomSpecOptions o;
  o.max_tasks = 10;
  o.max_candidates = 60;
  o.max_slack_s = 20;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = testing::random_instance(seed + 1000, o);
    const InstanceIndex index(inst);
    PlanState plan(index);
    for (int t = 0; t < index.task_count(); ++t) {
      for (int opp : index.task_opps(t)) {
        if (plan.can_insert(opp)) {
          plan.insert(opp);
          break;
        }
      }
    }
    const Schedule full = plan.to_schedule("t");
    REQUIRE(validate_schedule(full, inst).pass);
    Rng rng(seed);
    for (int k = 0; k < 20; ++k) {
      Schedule sub = full;
      std::erase_if(sub.assignments, [&](const Assignment&) { return rng.bernoulli(0.5); });
      CHECK(validate_schedule(sub, inst).pass);
    }
  }
}
