// Campaign runner, scene export and result reporting.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eosb/charlib.hpp"
#include "eosb/core.hpp"
#include "eosb/evallib.hpp"
#include "eosb/genlib.hpp"
#include "eosb/solvers.hpp"

namespace eosb {

// ---- solver configuration as JSON ----

std::string solver_config_json(const SolverConfig& config);
// Missing keys keep their defaults; unknown keys are a ParseError.
SolverConfig parse_solver_config(std::string_view json);

// ---- campaign ----

struct RunTriple {
  std::string scenario;  // template id
  int seed = 0;          // seed index within the scenario
  SolverConfig solver;
};

struct RunManifest {
  std::vector<ScenarioTemplate> templates;  // resolved scenarios, in order
  std::vector<RunTriple> runs;              // expanded, duplicate-free
  std::string out_dir = "campaign";
  int jobs = 1;
  std::uint64_t master_seed = kDefaultMasterSeed;
  bool descriptors = false;  // also characterise every instance
};

// Accepts either explicit "runs" or the product of "scenarios" x "seeds" x
// "solvers". Scenarios are catalogue ids or inline template objects.
RunManifest parse_manifest(std::string_view json);
std::string manifest_json(const RunManifest& manifest);

struct RunRecord {
  std::string scenario;
  int seed = 0;
  std::string solver;  // solver tag, e.g. "sa_all"
  bool ok = false;
  std::string error;
  int tasks = 0;
  int scheduled = 0;
  bool search_complete = true;
  MetricReport metrics;
  std::string instance_digest;
  std::string schedule_digest;
  double runtime_s = 0;
};

struct CampaignOptions {
  // Instance cache; defaults to $EOSB_CACHE_DIR, else <out>/instances.
  std::optional<std::string> cache_dir;
  bool quiet = true;
};

struct CampaignResult {
  std::vector<RunRecord> records;  // manifest order
  int reused = 0;                  // triples skipped because already complete
  int computed = 0;
  std::string results_csv;   // deterministic table
  std::string runtimes_csv;  // wall-clock runtimes, not deterministic
};

// Content key of one triple: template, seed, master seed and solver config.
std::string run_key(const ScenarioTemplate& tpl, int seed, const SolverConfig& config,
                    std::uint64_t master_seed);

// Runs every triple on a pool of manifest.jobs workers. Writes per-run files
// under <out>/runs, then results.csv and runtimes.csv. Failures become rows.
CampaignResult run_campaign(const RunManifest& manifest, const CampaignOptions& options = {});

// Deterministic tables from records: one row per run plus one mean row per
// (scenario, solver).
std::string results_table(const std::vector<RunRecord>& records);
std::string runtimes_table(const std::vector<RunRecord>& records);

// ---- scene export ----

inline constexpr double kSceneTrackStepS = 30.0;

// Refuses schedules that fail validation with InfeasibleScheduleError.
std::string export_scene(const Instance& instance, const Schedule& schedule);
// Converts a scene document to a CZML packet array.
std::string scene_to_czml(std::string_view scene_json);

// ---- report ----

struct SummaryRow {
  std::string scenario;
  std::string solver;
  int runs = 0;
  int failed = 0;
  double tp = 0, tcr = 0, tm = 0, rt_s = 0, composite_all = 0;
  std::optional<double> bd;
  bool runtime_missing = true;
  std::optional<DescriptorReport> descriptors;  // empty when no report joins
};

// Groups instance rows of a results table by (scenario, solver) and
// left-joins scenario-level descriptor reports on scenario id.
std::vector<SummaryRow> summarise(std::string_view results_csv, std::string_view runtimes_csv,
                                  const std::vector<DescriptorReport>& descriptors);
std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string summary_markdown(const std::vector<SummaryRow>& rows);

// ---- CSV ----

using CsvRow = std::vector<std::string>;
std::string csv_line(const CsvRow& fields);
std::vector<CsvRow> parse_csv(std::string_view text);
// Shortest round-trip decimal text of a double.
std::string format_number(double v);

}  // namespace eosb
