// eosb: generate, characterise, solve, evaluate and benchmark EOSSP instances.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <regex>

#include "CLI11.hpp"
#include "eosb/bench.hpp"
#include "eosb/serialize.hpp"

namespace fs = std::filesystem;
using namespace eosb;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::string out;
};

void emit(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    if (!bytes.empty() && bytes.back() != '\n') std::cout << '\n';
  } else {
    if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
    write_file(path, bytes);
  }
}

std::vector<ScenarioTemplate> family_templates(const std::string& family) {
  if (family == "all") return enumerate_all();
  const Family f = parse_family(family);
  std::vector<ScenarioTemplate> out;
  for (const ScenarioTemplate& t : enumerate_all()) {
    if (t.family == f) out.push_back(t);
  }
  return out;
}

int cmd_generate(const Globals& g, const std::string& family, const std::string& filter,
                 const std::vector<std::string>& ids, const std::string& template_file, int seeds, int threads,
                 bool list) {
  std::vector<ScenarioTemplate> templates;
  if (!template_file.empty()) templates.push_back(parse_template_json(read_file(template_file)));
  for (const std::string& id : ids) {
    const auto t = find_template(id);
    if (!t) throw DomainError("unknown scenario '" + id + "'");
    templates.push_back(*t);
  }
  if (templates.empty()) templates = family_templates(family);
  if (!filter.empty()) {
    const std::regex re(filter);
    std::erase_if(templates, [&](const ScenarioTemplate& t) { return !std::regex_search(t.id, re); });
  }
  if (list) {
    for (const ScenarioTemplate& t : templates) std::cout << t.id << '\n';
    return 0;
  }
  const fs::path out = g.out.empty() ? fs::path("instances") : fs::path(g.out);
  fs::create_directories(out);
  GenerateOptions opts;
  opts.threads = threads;
  if (g.seed) opts.master_seed = *g.seed;
  int failures = 0;
  for (const ScenarioTemplate& t : templates) {
    for (int k = 0; k < seeds; ++k) {
      try {
        const Instance inst = generate_instance(t, k, opts);
        write_file((out / (inst.id + ".json")).string(), serialize_instance(inst));
        std::fprintf(stderr, "%s: %zu windows, %zu opportunities\n", inst.id.c_str(), inst.visible_windows.size(),
                     inst.opportunities.size());
      } catch (const GenerationError& e) {
        ++failures;
        std::fprintf(stderr, "%s seed %d: %s\n", t.id.c_str(), k, e.what());
      }
    }
  }
  return failures ? 1 : 0;
}

int cmd_characterise(const Globals& g, const std::vector<std::string>& inputs, std::optional<double> step,
                     const std::string& scenario) {
  std::vector<DescriptorReport> reports;
  for (const std::string& path : inputs) reports.push_back(characterise(deserialize_instance(read_file(path)), step));
  if (reports.size() == 1 && scenario.empty()) {
    emit(g.out, descriptor_report_json(reports[0]));
  } else {
    emit(g.out, descriptor_report_json(aggregate(reports, scenario)));
  }
  return 0;
}

int cmd_solve(const Globals& g, const std::string& in, const std::string& solver, const std::string& objective,
              std::optional<double> time_limit, const std::string& config_file) {
  SolverConfig c = config_file.empty() ? SolverConfig{} : parse_solver_config(read_file(config_file));
  if (!solver.empty()) c.solver = parse_solver_kind(solver);
  if (!objective.empty()) c.objective = parse_objective(objective);
  if (g.seed) c.seed = *g.seed;
  if (time_limit) c.time_limit_s = *time_limit;
  const Instance inst = deserialize_instance(read_file(in));
  const SolveResult r = solve(inst, c);
  std::fprintf(stderr, "%s: %zu of %zu tasks, objective %.6g%s, %.3f s\n", r.schedule.solver.c_str(),
               r.schedule.assignments.size(), inst.tasks.size(), r.objective, r.complete ? "" : " (incomplete)",
               r.schedule.wall_time_s);
  emit(g.out, serialize_schedule(r.schedule));
  return 0;
}

int cmd_evaluate(const Globals& g, const std::string& in, const std::string& schedule_file) {
  const Instance inst = deserialize_instance(read_file(in));
  const Schedule s = deserialize_schedule(read_file(schedule_file));
  const FeasibilityReport feas = validate_schedule(s, inst);
  if (!feas.pass) {
    emit(g.out, feasibility_report_json(feas));
    return 2;
  }
  emit(g.out, metric_report_json(evaluate(s, inst, s.wall_time_s)));
  return 0;
}

int cmd_campaign(const Globals& g, const CLI::App& sub, const std::string& manifest_file,
                 const std::string& cache, bool verbose) {
  RunManifest m = parse_manifest(read_file(manifest_file));
  if (!g.out.empty()) m.out_dir = g.out;
  if (sub.get_parent()->count("--jobs")) m.jobs = g.jobs;
  CampaignOptions opts;
  if (!cache.empty()) opts.cache_dir = cache;
  opts.quiet = !verbose;
  const CampaignResult r = run_campaign(m, opts);
  int failed = 0;
  for (const RunRecord& rec : r.records) failed += !rec.ok;
  std::fprintf(stderr, "%zu runs: %d computed, %d reused, %d failed; tables in %s\n", r.records.size(), r.computed,
               r.reused, failed, m.out_dir.c_str());
  return failed ? 1 : 0;
}

int cmd_export(const Globals& g, const std::string& in, const std::string& schedule_file, const std::string& czml) {
  const Instance inst = deserialize_instance(read_file(in));
  Schedule s;
  s.instance_id = inst.id;
  if (!schedule_file.empty()) s = deserialize_schedule(read_file(schedule_file));
  const std::string scene = export_scene(inst, s);
  emit(g.out, scene);
  if (!czml.empty()) emit(czml, scene_to_czml(scene));
  return 0;
}

int cmd_report(const Globals& g, const std::string& results, const std::string& runtimes,
               const std::string& descriptor_dir) {
  std::vector<DescriptorReport> descriptors;
  if (!descriptor_dir.empty() && fs::is_directory(descriptor_dir)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(descriptor_dir)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) descriptors.push_back(parse_descriptor_report(read_file(f.string())));
  }
  std::string rt;
  if (!runtimes.empty() && fs::exists(runtimes)) rt = read_file(runtimes);
  const std::vector<SummaryRow> rows = summarise(read_file(results), rt, descriptors);
  if (rows.empty()) throw DomainError("results table has no instance rows");
  if (g.out.empty()) {
    std::cout << summary_markdown(rows);
    return 0;
  }
  fs::create_directories(g.out);
  write_file((fs::path(g.out) / "summary.csv").string(), summary_csv(rows));
  write_file((fs::path(g.out) / "summary.md").string(), summary_markdown(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Earth observation satellite scheduling benchmark"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed (generate) or solver seed (solve)");
  app.add_option("--jobs", g.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output file or directory");

  auto* gen = app.add_subcommand("generate", "Generate benchmark instances");
  std::string family = "standard", filter, template_file;
  std::vector<std::string> ids;
  int seeds = 1, threads = 1;
  bool list = false;
  gen->add_option("--family", family, "standard, capacity, agility, constellation, realistic or all");
  gen->add_option("--filter", filter, "Regular expression on scenario ids");
  gen->add_option("--scenario", ids, "Scenario id (repeatable)");
  gen->add_option("--template", template_file, "Scenario template JSON file");
  gen->add_option("--seeds", seeds, "Instances per scenario")->check(CLI::PositiveNumber);
  gen->add_option("--threads", threads, "Window computation threads")->check(CLI::PositiveNumber);
  gen->add_flag("--list", list, "Print matching scenario ids only");

  auto* chr = app.add_subcommand("characterise", "Compute structural descriptors");
  std::vector<std::string> char_inputs;
  std::optional<double> step;
  std::string scenario;
  chr->add_option("--in", char_inputs, "Instance files")->required();
  chr->add_option("--step", step, "Analysis step in seconds");
  chr->add_option("--scenario", scenario, "Aggregate into one scenario-level report with this id");

  auto* sol = app.add_subcommand("solve", "Solve an instance");
  std::string sol_in, solver, objective, config_file;
  std::optional<double> time_limit;
  sol->add_option("--in", sol_in, "Instance file")->required();
  sol->add_option("--solver", solver, "exact, greedy_tp, greedy_tcr, greedy_tm, greedy_bd, sa, ga, aco");
  sol->add_option("--objective", objective, "tp, tcr or all");
  sol->add_option("--time-limit", time_limit, "Soft time limit in seconds");
  sol->add_option("--config", config_file, "Solver configuration JSON");

  auto* ev = app.add_subcommand("evaluate", "Validate and score a schedule");
  std::string ev_in, ev_schedule;
  ev->add_option("--in", ev_in, "Instance file")->required();
  ev->add_option("--schedule", ev_schedule, "Schedule file")->required();

  auto* camp = app.add_subcommand("campaign", "Run a benchmark campaign");
  std::string manifest, cache;
  bool verbose = false;
  camp->add_option("--manifest", manifest, "Campaign manifest JSON")->required();
  camp->add_option("--cache", cache, "Instance cache directory (default $EOSB_CACHE_DIR)");
  camp->add_flag("--verbose", verbose, "Log every run");

  auto* exp = app.add_subcommand("export-scene", "Export a scene for a globe viewer");
  std::string ex_in, ex_schedule, czml;
  exp->add_option("--in", ex_in, "Instance file")->required();
  exp->add_option("--schedule", ex_schedule, "Schedule file (default: empty schedule)");
  exp->add_option("--czml", czml, "Also write a CZML document here");

  auto* rep = app.add_subcommand("report", "Summarise a results table");
  std::string results, runtimes, descriptor_dir;
  rep->add_option("--results", results, "results.csv")->required();
  rep->add_option("--runtimes", runtimes, "runtimes.csv");
  rep->add_option("--descriptors", descriptor_dir, "Directory of descriptor reports");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*gen) return cmd_generate(g, family, filter, ids, template_file, seeds, threads, list);
    if (*chr) return cmd_characterise(g, char_inputs, step, scenario);
    if (*sol) return cmd_solve(g, sol_in, solver, objective, time_limit, config_file);
    if (*ev) return cmd_evaluate(g, ev_in, ev_schedule);
    if (*camp) return cmd_campaign(g, *camp, manifest, cache, verbose);
    if (*exp) return cmd_export(g, ex_in, ex_schedule, czml);
    if (*rep) {
      if (runtimes.empty()) runtimes = (fs::path(results).parent_path() / "runtimes.csv").string();
      if (descriptor_dir.empty()) descriptor_dir = (fs::path(results).parent_path() / "descriptors").string();
      return cmd_report(g, results, runtimes, descriptor_dir);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
