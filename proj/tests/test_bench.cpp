#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "eosb/bench.hpp"
#include "fixtures.hpp"
#include "json.hpp"

using namespace eosb;
namespace fs = std::filesystem;

namespace {

constexpr const char* kScenario = "std-agile-h12-s1-t10-global";

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("eosb-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string manifest_text(const std::string& out, int jobs, const std::string& seeds = "10") {
  return R"({"schema_version":1,"type":"campaign_manifest","out_dir":")" + out + R"(","jobs":)" +
         std::to_string(jobs) + R"(,"scenarios":[")" + kScenario + R"("],"seeds":)" + seeds +
         R"(,"solvers":[{"solver":"greedy_tp"},{"solver":"sa","objective":"all","seed":3,)"
         R"("sa_iterations_per_level":50,"time_limit_s":600}]})";
}

CampaignOptions options_for(const TempDir& dir) {
  CampaignOptions o;
  o.cache_dir = (dir.path / "cache").string();
  return o;
}

std::vector<CsvRow> rows_with_level(const std::string& csv, const std::string& level) {
  std::vector<CsvRow> out;
  const auto rows = parse_csv(csv);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][0] == level) out.push_back(rows[i]);
  }
  return out;
}

std::size_t column(const std::string& csv, const std::string& name) {
  const auto header = parse_csv(csv).at(0);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  FAIL("no column " << name);
  return 0;
}

}  // namespace

TEST_CASE("manifest expansion and duplicates") {
  const RunManifest m = parse_manifest(manifest_text("x", 2));
  CHECK(m.runs.size() == 20);
  CHECK(m.templates.size() == 1);
  CHECK(m.jobs == 2);
  CHECK(parse_manifest(manifest_json(m)).runs.size() == 20);

  const std::string dup = R"({"schema_version":1,"type":"campaign_manifest","runs":[)"
                          R"({"scenario":")" + std::string(kScenario) + R"(","seed":0,"solver":{"solver":"greedy_tp"}},)"
                          R"({"scenario":")" + std::string(kScenario) + R"(","seed":0,"solver":{"solver":"greedy_tp"}}]})";
  CHECK_THROWS_AS(parse_manifest(dup), ParseError);
  const std::string unknown = R"({"schema_version":1,"type":"campaign_manifest","scenarios":[")" +
                              std::string(kScenario) + R"("],"seeds":1,"solvers":[{"solver":"sa","warp":1}]})";
  CHECK_THROWS_AS(parse_manifest(unknown), ParseError);
}

TEST_CASE("solver config round-trips") {
  SolverConfig c;
  c.solver = SolverKind::kACO;
  c.objective = Objective::kTCR;
  c.aco_rho = 0.25;
  c.seed = 9;
  const SolverConfig back = parse_solver_config(solver_config_json(c));
  CHECK(solver_config_json(back) == solver_config_json(c));
}

TEST_CASE("campaign rows, aggregates and resume") {
  TempDir dir;
  const std::string out = (dir.path / "run").string();
  const RunManifest m = parse_manifest(manifest_text(out, 2));
  const CampaignResult first = run_campaign(m, options_for(dir));
  CHECK(first.computed == 20);
  CHECK(first.reused == 0);
  const auto inst = rows_with_level(first.results_csv, "instance");
  const auto agg = rows_with_level(first.results_csv, "scenario");
  CHECK(inst.size() == 20);
  CHECK(agg.size() == 2);
  CHECK(slurp(fs::path(out) / "results.csv") == first.results_csv);
  for (const RunRecord& r : first.records) {
    CHECK(r.ok);
    CHECK(r.tasks == 10);
  }

  // Scenario mean equals the mean of its instance rows.
  const std::size_t solver_col = column(first.results_csv, "solver");
  for (const char* col : {"tp", "tcr", "tm", "composite_all"}) {
    const std::size_t c = column(first.results_csv, col);
    for (const CsvRow& a : agg) {
      double sum = 0;
      int n = 0;
      for (const CsvRow& r : inst) {
        if (r[solver_col] != a[solver_col]) continue;
        sum += std::stod(r[c]);
        ++n;
      }
      CHECK(n == 10);
      CHECK(std::abs(std::stod(a[c]) - sum / n) < 1e-12);
    }
  }

  const CampaignResult second = run_campaign(m, options_for(dir));
  CHECK(second.computed == 0);
  CHECK(second.reused == 20);
  CHECK(second.results_csv == first.results_csv);
}

TEST_CASE("worker count does not change results") {
  TempDir dir;
  const CampaignResult one =
      run_campaign(parse_manifest(manifest_text((dir.path / "a").string(), 1, "[0,1,2]")), options_for(dir));
  const CampaignResult four =
      run_campaign(parse_manifest(manifest_text((dir.path / "b").string(), 4, "[0,1,2]")), options_for(dir));
  CHECK(one.results_csv == four.results_csv);
}

TEST_CASE("failed runs become rows") {
  TempDir dir;
  const RunManifest m = parse_manifest(manifest_text((dir.path / "f").string(), 1, "[0,99]"));
  const CampaignResult r = run_campaign(m, options_for(dir));
  int failed = 0;
  for (const RunRecord& rec : r.records) {
    if (!rec.ok) {
      ++failed;
      CHECK(rec.seed == 99);
      CHECK_FALSE(rec.error.empty());
    }
  }
  CHECK(failed == 2);
  const std::size_t status = column(r.results_csv, "status");
  int failed_rows = 0;
  for (const CsvRow& row : rows_with_level(r.results_csv, "instance")) failed_rows += row[status] == "failed";
  CHECK(failed_rows == 2);
  for (const CsvRow& row : rows_with_level(r.results_csv, "scenario")) CHECK(row[status] == "partial");
  // A rerun retries failures only.
  const CampaignResult again = run_campaign(m, options_for(dir));
  CHECK(again.reused == 2);
  CHECK(again.computed == 2);
}

TEST_CASE("scene export") {
  const Instance inst = testing::toy_instance();
  const auto c = candidate_assignments(inst);
  Schedule empty;
  empty.instance_id = inst.id;
  const auto doc = nlohmann::json::parse(export_scene(inst, empty));
  CHECK(doc["type"] == "scene");
  CHECK(doc["links"].empty());
  CHECK(doc["satellites"].size() == 2);
  CHECK(doc["targets"].size() == 4);

  Schedule two = empty;
  for (const Assignment& a : c) {
    if ((a.task_id == "A" && a.start_s == 0) || (a.task_id == "C" && a.start_s == 6)) two.assignments.push_back(a);
  }
  REQUIRE(two.assignments.size() == 2);
  const std::string scene = export_scene(inst, two);
  CHECK(scene == export_scene(inst, two));
  const auto d2 = nlohmann::json::parse(scene);
  REQUIRE(d2["links"].size() == 2);
  CHECK(d2["links"][0]["task_id"] == "A");
  CHECK(d2["links"][0]["end_s"] == 3);

  Schedule bad = empty;
  bad.assignments = {c[0], c[1]};
  CHECK_THROWS_AS(export_scene(inst, bad), InfeasibleScheduleError);

  const auto czml = nlohmann::json::parse(scene_to_czml(scene));
  REQUIRE(czml.is_array());
  CHECK(czml[0]["id"] == "document");
  CHECK(czml.size() == 1 + 2 + 4 + 2);
}

TEST_CASE("summary joins descriptors and runtimes") {
  RunRecord a;
  a.scenario = "sc";
  a.seed = 0;
  a.solver = "greedy_tp";
  a.ok = true;
  a.tasks = 4;
  a.scheduled = 2;
  a.metrics.tp = 5;
  a.metrics.tcr = 0.5;
  a.metrics.tm = 0.6;
  a.metrics.bd = 1;
  a.runtime_s = 0.2;
  RunRecord b = a;
  b.seed = 1;
  b.metrics.tp = 7;
  b.runtime_s = 0.4;
  RunRecord other = a;
  other.scenario = "other";
  const std::vector<RunRecord> records{a, b, other};
  const std::string results = results_table(records);
  const std::string runtimes = runtimes_table(records);

  DescriptorReport d;
  d.id = "sc";
  d.level = DescriptorLevel::kScenario;
  d.gamma_ao = 0.3;
  const auto rows = summarise(results, runtimes, {d});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].scenario == "sc");
  CHECK(rows[0].runs == 2);
  CHECK(rows[0].tp == doctest::Approx(6));
  CHECK(rows[0].rt_s == doctest::Approx(0.3));
  REQUIRE(rows[0].descriptors.has_value());
  CHECK(rows[0].descriptors->gamma_ao == 0.3);
  CHECK_FALSE(rows[1].descriptors.has_value());
  CHECK(summary_markdown(rows).find("other") != std::string::npos);
  CHECK(parse_csv(summary_csv(rows)).size() == 3);

  const auto one = summarise(results_table({a}), "", {});
  REQUIRE(one.size() == 1);
  CHECK(one[0].runtime_missing);
}

TEST_CASE("csv quoting and numbers") {
  const CsvRow row{"plain", "with,comma", "with \"quote\"", "", "line\nbreak"};
  const auto back = parse_csv(csv_line(row));
  REQUIRE(back.size() == 1);
  CHECK(back[0] == row);
  CHECK(format_number(0) == "0");
  CHECK(format_number(0.1) == "0.1");
  CHECK(std::stod(format_number(1.0 / 3)) == 1.0 / 3);
  CHECK_THROWS(format_number(std::nan("")));
}
