#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "../core/json_util.hpp"
#include "eosb/bench.hpp"
#include "eosb/serialize.hpp"

namespace eosb {

namespace fs = std::filesystem;
using nlohmann::json;

// ---- solver configuration ----

std::string solver_config_json(const SolverConfig& c) {
  const json j = {
      {"solver", to_string(c.solver)},
      {"objective", to_string(c.objective)},
      {"seed", c.seed},
      {"time_limit_s", c.time_limit_s},
      {"greedy_restarts", c.greedy_restarts},
      {"bb_node_limit", c.bb_node_limit},
      {"sa_t0_factor", c.sa_t0_factor},
      {"sa_alpha", c.sa_alpha},
      {"sa_iterations_per_level", c.sa_iterations_per_level},
      {"sa_min_temp_ratio", c.sa_min_temp_ratio},
      {"sa_destroy_max", c.sa_destroy_max},
      {"ga_population", c.ga_population},
      {"ga_generations", c.ga_generations},
      {"ga_mutation", c.ga_mutation},
      {"ga_tournament", c.ga_tournament},
      {"aco_ants", c.aco_ants},
      {"aco_iterations", c.aco_iterations},
      {"aco_rho", c.aco_rho},
      {"aco_beta1", c.aco_beta1},
      {"aco_beta2", c.aco_beta2},
      {"aco_tau_min", c.aco_tau_min},
      {"aco_candidates", c.aco_candidates},
  };
  return j.dump();
}

namespace {

SolverConfig solver_config_from(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError("expected solver object", path);
  SolverConfig c;
  for (const auto& [key, v] : j.items()) {
    const std::string where = path + "/" + key;
    try {
      if (key == "solver") c.solver = parse_solver_kind(v.get<std::string>());
      else if (key == "objective") c.objective = parse_objective(v.get<std::string>());
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "time_limit_s") c.time_limit_s = v.get<double>();
      else if (key == "greedy_restarts") c.greedy_restarts = v.get<int>();
      else if (key == "bb_node_limit") c.bb_node_limit = v.get<long long>();
      else if (key == "sa_t0_factor") c.sa_t0_factor = v.get<double>();
      else if (key == "sa_alpha") c.sa_alpha = v.get<double>();
      else if (key == "sa_iterations_per_level") c.sa_iterations_per_level = v.get<int>();
      else if (key == "sa_min_temp_ratio") c.sa_min_temp_ratio = v.get<double>();
      else if (key == "sa_destroy_max") c.sa_destroy_max = v.get<int>();
      else if (key == "ga_population") c.ga_population = v.get<int>();
      else if (key == "ga_generations") c.ga_generations = v.get<int>();
      else if (key == "ga_mutation") c.ga_mutation = v.get<double>();
      else if (key == "ga_tournament") c.ga_tournament = v.get<int>();
      else if (key == "aco_ants") c.aco_ants = v.get<int>();
      else if (key == "aco_iterations") c.aco_iterations = v.get<int>();
      else if (key == "aco_rho") c.aco_rho = v.get<double>();
      else if (key == "aco_beta1") c.aco_beta1 = v.get<double>();
      else if (key == "aco_beta2") c.aco_beta2 = v.get<double>();
      else if (key == "aco_tau_min") c.aco_tau_min = v.get<double>();
      else if (key == "aco_candidates") c.aco_candidates = v.get<int>();
      else throw ParseError("unknown solver parameter '" + key + "'", where);
    } catch (const json::exception& e) {
      throw ParseError(e.what(), where);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), where);
    }
  }
  if (!(c.time_limit_s > 0)) throw ParseError("time_limit_s must be positive", path + "/time_limit_s");
  return c;
}

std::vector<int> seeds_from(const json& j) {
  std::vector<int> seeds;
  if (j.is_number_integer()) {
    for (int k = 0; k < j.get<int>(); ++k) seeds.push_back(k);
  } else if (j.is_array()) {
    for (const json& s : j) seeds.push_back(s.get<int>());
  } else {
    throw ParseError("seeds must be a count or a list", "/seeds");
  }
  for (int s : seeds) {
    if (s < 0) throw ParseError("seed indices must be non-negative", "/seeds");
  }
  return seeds;
}

}  // namespace

SolverConfig parse_solver_config(std::string_view bytes) { return solver_config_from(jsonutil::parse(bytes), ""); }

// ---- manifest ----

std::string run_key(const ScenarioTemplate& tpl, int seed, const SolverConfig& config,
                    std::uint64_t master_seed) {
  return sha256_hex(template_json(tpl) + "\n" + std::to_string(seed) + "\n" + std::to_string(master_seed) +
                    "\n" + solver_config_json(config));
}

RunManifest parse_manifest(std::string_view bytes) {
  using namespace jsonutil;
  const json j = parse(bytes);
  expect_schema(j, "campaign_manifest");
  RunManifest m;
  m.out_dir = get_or<std::string>(j, "out_dir", m.out_dir, "");
  m.jobs = get_or<int>(j, "jobs", 1, "");
  m.master_seed = get_or<std::uint64_t>(j, "master_seed", kDefaultMasterSeed, "");
  m.descriptors = get_or<bool>(j, "descriptors", false, "");
  if (m.jobs < 1) throw ParseError("jobs must be at least 1", "/jobs");

  std::map<std::string, std::size_t> by_id;
  auto add_template = [&](const ScenarioTemplate& t) {
    auto [it, fresh] = by_id.emplace(t.id, m.templates.size());
    if (fresh) {
      m.templates.push_back(t);
    } else if (template_json(m.templates[it->second]) != template_json(t)) {
      throw ParseError("conflicting definitions of scenario '" + t.id + "'", "/scenarios");
    }
  };
  auto resolve = [&](const json& s, const std::string& path) -> std::string {
    if (s.is_string()) {
      const std::string id = s.get<std::string>();
      if (!by_id.count(id)) {
        const auto t = find_template(id);
        if (!t) throw ParseError("unknown scenario '" + id + "'", path);
        add_template(*t);
      }
      return id;
    }
    const ScenarioTemplate t = parse_template_json(s.dump());
    add_template(t);
    return t.id;
  };

  if (j.contains("runs")) {
    const json& runs = array_at(j, "runs", "");
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const std::string path = "/runs/" + std::to_string(i);
      RunTriple r;
      r.scenario = resolve(at(runs[i], "scenario", path), path + "/scenario");
      r.seed = get<int>(runs[i], "seed", path);
      r.solver = solver_config_from(at(runs[i], "solver", path), path + "/solver");
      m.runs.push_back(r);
    }
  } else {
    const json& scenarios = array_at(j, "scenarios", "");
    const std::vector<int> seeds = seeds_from(at(j, "seeds", ""));
    const json& solvers = array_at(j, "solvers", "");
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
      ids.push_back(resolve(scenarios[i], "/scenarios/" + std::to_string(i)));
    }
    std::vector<SolverConfig> configs;
    for (std::size_t i = 0; i < solvers.size(); ++i) {
      configs.push_back(solver_config_from(solvers[i], "/solvers/" + std::to_string(i)));
    }
    for (const std::string& id : ids) {
      for (int seed : seeds) {
        for (const SolverConfig& c : configs) m.runs.push_back({id, seed, c});
      }
    }
  }

  std::set<std::string> keys;
  for (const RunTriple& r : m.runs) {
    if (!keys.insert(run_key(m.templates[by_id.at(r.scenario)], r.seed, r.solver, m.master_seed)).second) {
      throw ParseError("duplicate run (" + r.scenario + ", seed " + std::to_string(r.seed) + ", " +
                           solver_tag(r.solver) + ")",
                       "/runs");
    }
  }
  return m;
}

std::string manifest_json(const RunManifest& m) {
  json runs = json::array();
  for (const RunTriple& r : m.runs) {
    runs.push_back({{"scenario", r.scenario}, {"seed", r.seed}, {"solver", json::parse(solver_config_json(r.solver))}});
  }
  json scenarios = json::array();
  for (const ScenarioTemplate& t : m.templates) scenarios.push_back(json::parse(template_json(t)));
  const json j = {{"schema_version", kSchemaVersion},
                  {"type", "campaign_manifest"},
                  {"out_dir", m.out_dir},
                  {"jobs", m.jobs},
                  {"master_seed", m.master_seed},
                  {"descriptors", m.descriptors},
                  {"scenarios", scenarios},
                  {"runs", runs}};
  return j.dump(2);
}

// ---- run records ----

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string record_json(const RunRecord& r) {
  const json j = {{"schema_version", kSchemaVersion},
                  {"type", "run_record"},
                  {"scenario", r.scenario},
                  {"seed", r.seed},
                  {"solver", r.solver},
                  {"ok", r.ok},
                  {"error", r.error},
                  {"tasks", r.tasks},
                  {"scheduled", r.scheduled},
                  {"search_complete", r.search_complete},
                  {"tp", r.metrics.tp},
                  {"tcr", r.metrics.tcr},
                  {"tm", r.metrics.tm},
                  {"bd", optional_number(r.metrics.bd)},
                  {"composite_all", r.metrics.composite_all},
                  {"rt_s", r.metrics.rt_s},
                  {"instance_digest", r.instance_digest},
                  {"schedule_digest", r.schedule_digest},
                  {"runtime_s", r.runtime_s}};
  return j.dump(2);
}

RunRecord parse_record(std::string_view bytes) {
  using namespace jsonutil;
  const json j = parse(bytes);
  expect_schema(j, "run_record");
  RunRecord r;
  r.scenario = get<std::string>(j, "scenario", "");
  r.seed = get<int>(j, "seed", "");
  r.solver = get<std::string>(j, "solver", "");
  r.ok = get<bool>(j, "ok", "");
  r.error = get<std::string>(j, "error", "");
  r.tasks = get<int>(j, "tasks", "");
  r.scheduled = get<int>(j, "scheduled", "");
  r.search_complete = get<bool>(j, "search_complete", "");
  r.metrics.tp = get<double>(j, "tp", "");
  r.metrics.tcr = get<double>(j, "tcr", "");
  r.metrics.tm = get<double>(j, "tm", "");
  if (!at(j, "bd", "").is_null()) r.metrics.bd = get<double>(j, "bd", "");
  r.metrics.composite_all = get<double>(j, "composite_all", "");
  r.metrics.rt_s = get<double>(j, "rt_s", "");
  r.instance_digest = get<std::string>(j, "instance_digest", "");
  r.schedule_digest = get<std::string>(j, "schedule_digest", "");
  r.runtime_s = get<double>(j, "runtime_s", "");
  return r;
}

void write_atomic(const fs::path& path, std::string_view bytes) {
  const fs::path tmp = path.string() + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  write_file(tmp.string(), bytes);
  fs::rename(tmp, path);
}

std::string instance_key(const ScenarioTemplate& tpl, int seed, std::uint64_t master_seed) {
  return sha256_hex(template_json(tpl) + "\n" + std::to_string(seed) + "\n" + std::to_string(master_seed));
}

struct CachedInstance {
  Instance instance;
  std::string digest;
  std::optional<DescriptorReport> descriptors;
};

// Generates each (template, seed) once; concurrent requests share the work.
// An entry is dropped once every run that needs it has finished.
class InstanceStore {
 public:
  InstanceStore(fs::path dir, std::uint64_t master_seed, bool descriptors)
      : dir_(std::move(dir)), master_seed_(master_seed), descriptors_(descriptors) {}

  void expect(const std::string& key) {
    std::lock_guard lock(mu_);
    ++slots_[key].users;
  }

  std::shared_ptr<const CachedInstance> get(const ScenarioTemplate& tpl, int seed) {
    const std::string key = instance_key(tpl, seed, master_seed_);
    std::shared_future<std::shared_ptr<const CachedInstance>> future;
    std::promise<std::shared_ptr<const CachedInstance>> promise;
    bool producer = false;
    {
      std::lock_guard lock(mu_);
      Slot& slot = slots_[key];
      if (!slot.future.valid()) {
        slot.future = promise.get_future().share();
        producer = true;
      }
      future = slot.future;
    }
    if (producer) {
      try {
        promise.set_value(load_or_generate(tpl, seed, key));
      } catch (...) {
        promise.set_exception(std::current_exception());
      }
    }
    return future.get();
  }

  void release(const ScenarioTemplate& tpl, int seed) {
    std::lock_guard lock(mu_);
    const auto it = slots_.find(instance_key(tpl, seed, master_seed_));
    if (it != slots_.end() && --it->second.users <= 0) slots_.erase(it);
  }

 private:
  struct Slot {
    int users = 0;
    std::shared_future<std::shared_ptr<const CachedInstance>> future;
  };

  std::shared_ptr<const CachedInstance> load_or_generate(const ScenarioTemplate& tpl, int seed,
                                                         const std::string& key) {
    auto out = std::make_shared<CachedInstance>();
    const fs::path file = dir_ / (key + ".json");
    if (fs::exists(file)) {
      out->instance = deserialize_instance(read_file(file.string()));
    } else {
      GenerateOptions opts;
      opts.master_seed = master_seed_;
      out->instance = generate_instance(tpl, seed, opts);
      write_atomic(file, serialize_instance(out->instance));
    }
    out->digest = instance_digest(out->instance);
    if (descriptors_) {
      const fs::path dfile = dir_ / (key + ".descriptors.json");
      if (fs::exists(dfile)) {
        out->descriptors = parse_descriptor_report(read_file(dfile.string()));
      } else {
        out->descriptors = characterise(out->instance);
        write_atomic(dfile, descriptor_report_json(*out->descriptors));
      }
    }
    return out;
  }

  fs::path dir_;
  std::uint64_t master_seed_;
  bool descriptors_;
  std::mutex mu_;
  std::map<std::string, Slot> slots_;
};

std::string schedule_digest(Schedule s) {
  s.wall_time_s = 0;
  return sha256_hex(serialize_schedule(s));
}

}  // namespace

CampaignResult run_campaign(const RunManifest& m, const CampaignOptions& options) {
  std::map<std::string, const ScenarioTemplate*> templates;
  for (const ScenarioTemplate& t : m.templates) templates[t.id] = &t;
  for (const RunTriple& r : m.runs) {
    if (!templates.count(r.scenario)) throw DomainError("run references unknown scenario '" + r.scenario + "'");
  }

  const fs::path out(m.out_dir);
  const fs::path runs_dir = out / "runs";
  fs::path cache = out / "instances";
  if (options.cache_dir) {
    cache = *options.cache_dir;
  } else if (const char* env = std::getenv("EOSB_CACHE_DIR"); env && *env) {
    cache = env;
  }
  fs::create_directories(runs_dir);
  fs::create_directories(cache);
  write_file((out / "manifest.json").string(), manifest_json(m));

  InstanceStore store(cache, m.master_seed, m.descriptors);
  std::vector<std::string> keys;
  for (const RunTriple& r : m.runs) {
    const ScenarioTemplate& tpl = *templates.at(r.scenario);
    keys.push_back(run_key(tpl, r.seed, r.solver, m.master_seed));
    store.expect(instance_key(tpl, r.seed, m.master_seed));
  }

  CampaignResult result;
  result.records.resize(m.runs.size());
  std::vector<std::optional<DescriptorReport>> descriptors(m.runs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> reused{0};
  std::mutex log_mu;

  auto work = [&] {
    for (std::size_t i = next++; i < m.runs.size(); i = next++) {
      const RunTriple& run = m.runs[i];
      const ScenarioTemplate& tpl = *templates.at(run.scenario);
      const fs::path record_file = runs_dir / (keys[i] + ".json");
      RunRecord rec;
      rec.scenario = run.scenario;
      rec.seed = run.seed;
      rec.solver = solver_tag(run.solver);
      bool done = false;
      if (fs::exists(record_file)) {
        try {
          RunRecord prev = parse_record(read_file(record_file.string()));
          if (prev.ok) {
            rec = std::move(prev);
            done = true;
            ++reused;
          }
        } catch (const std::exception&) {
          // Unreadable leftovers are recomputed.
        }
      }
      if (!done) {
        try {
          const auto cached = store.get(tpl, run.seed);
          const Instance& inst = cached->instance;
          descriptors[i] = cached->descriptors;
          const SolveResult sr = solve(inst, run.solver);
          const FeasibilityReport feas = validate_schedule(sr.schedule, inst);
          if (!feas.pass) throw InfeasibleScheduleError("solver returned an infeasible schedule");
          rec.metrics = evaluate(sr.schedule, inst, sr.schedule.wall_time_s);
          rec.tasks = static_cast<int>(inst.tasks.size());
          rec.scheduled = static_cast<int>(sr.schedule.assignments.size());
          rec.search_complete = sr.complete;
          rec.instance_digest = cached->digest;
          rec.schedule_digest = schedule_digest(sr.schedule);
          rec.runtime_s = sr.schedule.wall_time_s;
          rec.ok = true;
          write_atomic(runs_dir / (keys[i] + ".schedule.json"), serialize_schedule(sr.schedule));
        } catch (const std::exception& e) {
          rec.ok = false;
          rec.error = e.what();
        }
        write_atomic(record_file, record_json(rec));
      }
      if (done && rec.ok && m.descriptors && !descriptors[i]) {
        try {
          descriptors[i] = store.get(tpl, run.seed)->descriptors;
        } catch (const std::exception&) {
          // The report is then flagged as missing descriptors.
        }
      }
      store.release(tpl, run.seed);
      if (!options.quiet) {
        std::lock_guard lock(log_mu);
        std::fprintf(stderr, "[%zu/%zu] %s seed %d %s: %s\n", i + 1, m.runs.size(), rec.scenario.c_str(), rec.seed,
                     rec.solver.c_str(), rec.ok ? (done ? "cached" : "ok") : rec.error.c_str());
      }
      result.records[i] = std::move(rec);
    }
  };

  const int jobs = std::max(1, m.jobs);
  std::vector<std::thread> pool;
  for (int k = 1; k < jobs; ++k) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  result.reused = reused;
  result.computed = static_cast<int>(m.runs.size()) - reused;
  result.results_csv = results_table(result.records);
  result.runtimes_csv = runtimes_table(result.records);
  write_file((out / "results.csv").string(), result.results_csv);
  write_file((out / "runtimes.csv").string(), result.runtimes_csv);

  if (m.descriptors) {
    // One scenario-level report per scenario, from each distinct instance.
    fs::create_directories(out / "descriptors");
    for (const ScenarioTemplate& t : m.templates) {
      std::map<int, DescriptorReport> per_seed;
      for (std::size_t i = 0; i < m.runs.size(); ++i) {
        if (m.runs[i].scenario == t.id && descriptors[i]) per_seed.emplace(m.runs[i].seed, *descriptors[i]);
      }
      if (per_seed.empty()) continue;
      std::vector<DescriptorReport> reports;
      for (auto& [seed, r] : per_seed) reports.push_back(r);
      write_file((out / "descriptors" / (t.id + ".json")).string(),
                 descriptor_report_json(aggregate(reports, t.id)));
    }
  }
  return result;
}

// ---- tables ----

namespace {

const CsvRow kResultColumns = {"level",    "scenario", "seed",          "solver",       "status",
                               "runs",     "tasks",    "scheduled",     "tp",           "tcr",
                               "tm",       "bd",       "composite_all", "search_complete",
                               "instance_digest",      "schedule_digest", "error"};

struct Group {
  std::string scenario, solver;
  std::vector<const RunRecord*> rows;
};

std::vector<Group> groups_of(const std::vector<RunRecord>& records) {
  std::vector<Group> groups;
  std::map<std::pair<std::string, std::string>, std::size_t> at;
  for (const RunRecord& r : records) {
    auto [it, fresh] = at.emplace(std::make_pair(r.scenario, r.solver), groups.size());
    if (fresh) groups.push_back({r.scenario, r.solver, {}});
    groups[it->second].rows.push_back(&r);
  }
  return groups;
}

}  // namespace

std::string results_table(const std::vector<RunRecord>& records) {
  std::string out = csv_line(kResultColumns);
  for (const RunRecord& r : records) {
    if (!r.ok) {
      out += csv_line({"instance", r.scenario, std::to_string(r.seed), r.solver, "failed", "0", "", "", "", "", "",
                       "", "", "", "", "", r.error});
      continue;
    }
    out += csv_line({"instance", r.scenario, std::to_string(r.seed), r.solver, "ok", "1", std::to_string(r.tasks),
                     std::to_string(r.scheduled), format_number(r.metrics.tp), format_number(r.metrics.tcr),
                     format_number(r.metrics.tm), r.metrics.bd ? format_number(*r.metrics.bd) : "",
                     format_number(r.metrics.composite_all), r.search_complete ? "1" : "0", r.instance_digest,
                     r.schedule_digest, ""});
  }
  for (const Group& g : groups_of(records)) {
    double tasks = 0, scheduled = 0, tp = 0, tcr = 0, tm = 0, bd = 0, all = 0;
    int ok = 0, bd_n = 0;
    bool complete = true;
    for (const RunRecord* r : g.rows) {
      if (!r->ok) continue;
      ++ok;
      tasks += r->tasks;
      scheduled += r->scheduled;
      tp += r->metrics.tp;
      tcr += r->metrics.tcr;
      tm += r->metrics.tm;
      all += r->metrics.composite_all;
      complete = complete && r->search_complete;
      if (r->metrics.bd) {
        bd += *r->metrics.bd;
        ++bd_n;
      }
    }
    const std::string status = ok == static_cast<int>(g.rows.size()) ? "ok" : ok == 0 ? "failed" : "partial";
    if (ok == 0) {
      out += csv_line({"scenario", g.scenario, "", g.solver, status, "0", "", "", "", "", "", "", "", "", "", "", ""});
      continue;
    }
    out += csv_line({"scenario", g.scenario, "", g.solver, status, std::to_string(ok), format_number(tasks / ok),
                     format_number(scheduled / ok), format_number(tp / ok), format_number(tcr / ok),
                     format_number(tm / ok), bd_n ? format_number(bd / bd_n) : "", format_number(all / ok),
                     complete ? "1" : "0", "", "", ""});
  }
  return out;
}

std::string runtimes_table(const std::vector<RunRecord>& records) {
  std::string out = csv_line({"level", "scenario", "seed", "solver", "runs", "rt_s"});
  for (const RunRecord& r : records) {
    if (r.ok) out += csv_line({"instance", r.scenario, std::to_string(r.seed), r.solver, "1", format_number(r.runtime_s)});
  }
  for (const Group& g : groups_of(records)) {
    double sum = 0;
    int n = 0;
    for (const RunRecord* r : g.rows) {
      if (!r->ok) continue;
      sum += r->runtime_s;
      ++n;
    }
    if (n) out += csv_line({"scenario", g.scenario, "", g.solver, std::to_string(n), format_number(sum / n)});
  }
  return out;
}

}  // namespace eosb
