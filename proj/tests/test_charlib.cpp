#include <algorithm>
#include <random>

#include "doctest.h"
#include "eosb/charlib.hpp"
#include "eosb/serialize.hpp"
#include "fixtures.hpp"

using namespace eosb;

TEST_CASE("toy instance reproduces the worked descriptor values") {
  const Instance inst = testing::toy_instance();
  const DescriptorReport r = characterise(inst, 1.0);
  CHECK(r.gamma_ao == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(r.gamma_oc == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(std::abs(r.gamma_ti - 2.0 / 6.0) < 1e-12);
  CHECK(r.gamma_at == doctest::Approx(1.0));
  CHECK(r.gamma_te == doctest::Approx(1.5));
  CHECK(std::abs(r.lambda_oc - 3.0 / 13.0) < 1e-12);
  CHECK(r.lambda_cs == doctest::Approx(1.0));
  CHECK(std::abs(r.lambda_to - 3.0 / 20.0) < 1e-12);
  CHECK(r.lambda_ac == doctest::Approx(2.0));
  CHECK(r.lambda_ed == doctest::Approx(1.0));
}

TEST_CASE("toy opportunities match the worked derivation") {
  const Instance inst = testing::toy_instance();
  REQUIRE(inst.opportunities.size() == 6);
  std::vector<std::tuple<std::string, double, double>> got;
  for (const auto& o : inst.opportunities) got.emplace_back(o.task_id, o.start_s, o.end_s);
  const std::vector<std::tuple<std::string, double, double>> want = {
      {"A", 0, 3}, {"A", 1, 4}, {"A", 5, 8}, {"B", 3, 6}, {"C", 6, 8}, {"C", 7, 9}};
  CHECK(got == want);
}

TEST_CASE("zero opportunities everywhere") {
  SyntheticSpec s;
  s.horizon_s = 100;
  s.satellites = {synthetic_satellite("S1")};
  s.tasks = {{"A", 5}, {"B", 5}, {"C", 5}};
  const DescriptorReport r = characterise(build_synthetic_instance(s), 1.0);
  CHECK(r.gamma_ao == 0);
  CHECK(r.gamma_oc == 1);
  CHECK(r.gamma_ti == 0);
  CHECK(r.gamma_at == 0);
  CHECK(r.gamma_te == 0);
  CHECK(r.lambda_oc == 0);
  CHECK(r.lambda_cs == 0);
}

TEST_CASE("tasks on disjoint satellites never interfere") {
  SyntheticSpec s;
  s.horizon_s = 20;
  s.satellites = {synthetic_satellite("S1"), synthetic_satellite("S2")};
  s.tasks = {{"A", 3}, {"B", 3}};
  s.windows = {{"A", "S1", 0, 5, {}}, {"B", "S2", 0, 5, {}}};
  s.transition_s = 1;
  const TaskDescriptors t = task_descriptors(build_synthetic_instance(s));
  CHECK(t.gamma_ti == 0);
  CHECK(t.gamma_at == 0);
}

TEST_CASE("single task gives zero satellite descriptors and a degenerate flag") {
  SyntheticSpec s;
  s.horizon_s = 20;
  s.satellites = {synthetic_satellite("S1")};
  s.tasks = {{"A", 3}};
  s.windows = {{"A", "S1", 0, 10, {}}};
  s.transition_s = 1;
  const Instance inst = build_synthetic_instance(s);
  const SatelliteDescriptors d = satellite_descriptors(inst, 1.0);
  CHECK(d.lambda_oc == 0);
  CHECK(d.lambda_cs == 0);
  CHECK(d.lambda_to == 0);
  CHECK(d.lambda_ac == 0);
  CHECK(d.lambda_ed == 0);
  CHECK(task_descriptors(inst).degenerate);
  CHECK(task_descriptors(inst).gamma_ti == 0);
}

TEST_CASE("two identical tasks on one of two satellites") {
  SyntheticSpec s;
  s.horizon_s = 20;
  s.satellites = {synthetic_satellite("S1"), synthetic_satellite("S2")};
  s.tasks = {{"A", 3}, {"B", 3}};
  s.windows = {{"A", "S1", 2, 8, {}}, {"B", "S1", 2, 8, {}}};
  s.transition_s = 1;
  const SatelliteDescriptors d = satellite_descriptors(build_synthetic_instance(s), 1.0);
  CHECK(d.lambda_cs == doctest::Approx(0.5));
  CHECK(d.lambda_ac == doctest::Approx(2.0));
}

TEST_CASE("transition-only conflicts count in the timeline") {
  SyntheticSpec s;
  s.horizon_s = 40;
  s.satellites = {synthetic_satellite("S1")};
  s.tasks = {{"A", 5}, {"B", 5}};
  s.windows = {{"A", "S1", 0, 5, {}}, {"B", "S1", 8, 13, {}}};
  s.transition_s = 5;
  const Instance inst = build_synthetic_instance(s);
  CHECK(task_descriptors(inst).gamma_ti == doctest::Approx(1.0));
  const SatelliteDescriptors d = satellite_descriptors(inst, 1.0);
  CHECK(d.lambda_oc == 0);  // activity intervals never overlap
  CHECK(d.lambda_cs == 1);
  CHECK(d.lambda_to == doctest::Approx(3.0 / 40.0));
}

TEST_CASE("adding a task without opportunities") {
  SyntheticSpec s = testing::toy_spec();
  const DescriptorReport before = characterise(build_synthetic_instance(s), 1.0);
  s.tasks.push_back({"E", 4});
  const DescriptorReport after = characterise(build_synthetic_instance(s), 1.0);
  CHECK(after.gamma_ao <= before.gamma_ao);
  CHECK(after.gamma_oc >= before.gamma_oc);
  CHECK(after.lambda_oc == before.lambda_oc);
  CHECK(after.lambda_cs == before.lambda_cs);
  CHECK(after.lambda_to == before.lambda_to);
  CHECK(after.lambda_ac == before.lambda_ac);
  CHECK(after.lambda_ed == before.lambda_ed);
}

TEST_CASE("ratio descriptors stay in range on random synthetic instances") {
  std::mt19937 gen(11);
  for (int rep = 0; rep < 100; ++rep) {
    SyntheticSpec s;
    s.horizon_s = 200;
    const int n_sat = 1 + rep % 3, n_task = 1 + rep % 9;
    for (int k = 0; k < n_sat; ++k) s.satellites.push_back(synthetic_satellite("S" + std::to_string(k)));
    for (int k = 0; k < n_task; ++k) s.tasks.push_back({"T" + std::to_string(k), 2 + static_cast<int>(gen() % 6)});
    for (int k = 0; k < 2 * n_task; ++k) {
      const double a = gen() % 180;
      const double len = 8 + gen() % 15;
      s.windows.push_back({"T" + std::to_string(gen() % n_task), "S" + std::to_string(gen() % n_sat), a,
                           std::min(200.0, a + len), {}});
    }
    s.transition_s = static_cast<double>(gen() % 6);
    const Instance inst = build_synthetic_instance(s);
    for (double step : {1.0, 0.5}) {
      const DescriptorReport r = characterise(inst, step);
      for (double v : {r.gamma_oc, r.gamma_ti, r.gamma_at, r.lambda_oc, r.lambda_cs, r.lambda_to, r.lambda_ed}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
      }
      CHECK((r.lambda_ac == 0 || r.lambda_ac >= 2));
    }
    // Grid stability: halving the step moves the overload ratio by at most
    // one step per segment per satellite.
    const DescriptorReport coarse = characterise(inst, 1.0), fine = characterise(inst, 0.5);
    const double bound = 2.0 * n_task * n_sat * 1.0 / (n_sat * s.horizon_s);
    CHECK(std::abs(coarse.lambda_to - fine.lambda_to) <= bound + 1e-12);
  }
}

TEST_CASE("aggregate") {
  DescriptorReport a, b;
  a.id = "x";
  b.id = "y";
  a.gamma_oc = 0.2;
  b.gamma_oc = 0.4;
  const std::vector<DescriptorReport> v{a, b}, w{b, a};
  const DescriptorReport m = aggregate(v, "scen");
  CHECK(m.gamma_oc == doctest::Approx(0.3));
  CHECK(m.level == DescriptorLevel::kScenario);
  CHECK(m.instance_count == 2);
  const DescriptorReport m2 = aggregate(w, "scen");
  CHECK(descriptor_report_json(m) == descriptor_report_json(m2));
  const std::vector<DescriptorReport> one{a};
  const DescriptorReport single = aggregate(one);
  CHECK(single.gamma_oc == a.gamma_oc);
  CHECK(single.level == DescriptorLevel::kScenario);
  CHECK_THROWS_AS(aggregate(std::vector<DescriptorReport>{}), DomainError);
  DescriptorReport c = a;
  c.analysis_step_s = 10;
  CHECK_THROWS_AS(aggregate(std::vector<DescriptorReport>{a, c}), DomainError);
}

TEST_CASE("descriptor report json round trip") {
  const DescriptorReport r = characterise(testing::toy_instance(), 1.0);
  const DescriptorReport back = parse_descriptor_report(descriptor_report_json(r));
  CHECK(descriptor_report_json(back) == descriptor_report_json(r));
}

TEST_CASE("synthetic builder") {
  SyntheticSpec empty;
  const Instance e = build_synthetic_instance(empty);
  CHECK(e.opportunities.empty());
  CHECK(validate_instance(e).empty());
  const Instance toy = testing::toy_instance();
  CHECK(validate_instance(toy).empty());
  CHECK(deserialize_instance(serialize_instance(toy)) == toy);
  SyntheticSpec bad = testing::toy_spec();
  bad.windows.push_back({"Z", "S1", 0, 3, {}});
  CHECK_THROWS_AS(build_synthetic_instance(bad), DomainError);
  bad = testing::toy_spec();
  bad.windows.push_back({"A", "S1", 5, 11, {}});
  CHECK_THROWS_AS(build_synthetic_instance(bad), DomainError);
}
