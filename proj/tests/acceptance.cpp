// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "eosb/bench.hpp"
#include "eosb/charlib.hpp"
#include "eosb/genlib.hpp"
#include "eosb/kinematics.hpp"
#include "eosb/solvers.hpp"
#include "fixtures.hpp"

using namespace eosb;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records every failed sub-check; the first few go into the detail line.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ok_ = false;
    if (++failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& s) { info_ += (info_.empty() ? "" : ", ") + s; }
  Outcome done() const {
    std::string d = info_;
    if (!ok_) {
      d += (d.empty() ? "" : "; ") + std::to_string(failures_) + " failed: " + notes_;
    }
    return {ok_, d};
  }

 private:
  bool ok_ = true;
  int failures_ = 0;
  std::string notes_, info_;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const SolverKind kAllSolvers[] = {SolverKind::kExactBB, SolverKind::kGreedyTP, SolverKind::kGreedyTCR,
                                  SolverKind::kGreedyTM, SolverKind::kGreedyBD, SolverKind::kSA,
                                  SolverKind::kGA,       SolverKind::kACO};
const Objective kObjectives[] = {Objective::kTP, Objective::kTCR, Objective::kAll};

double score_of(const testing::OracleScores& s, Objective o) {
  switch (o) {
    case Objective::kTP: return s.tp;
    case Objective::kTCR: return s.tcr;
    case Objective::kAll: return s.all;
  }
  return 0;
}

// ---- 1 ----
Outcome descriptor_oracle() {
  Checks c;
  const DescriptorReport r = characterise(testing::toy_instance(), 1.0);
  const std::pair<const char*, std::pair<double, double>> rows[] = {
      {"gamma_ao", {r.gamma_ao, 1.5}},         {"gamma_oc", {r.gamma_oc, 0.75}},
      {"gamma_ti", {r.gamma_ti, 2.0 / 6.0}},   {"gamma_at", {r.gamma_at, 1.0}},
      {"gamma_te", {r.gamma_te, 1.5}},         {"lambda_oc", {r.lambda_oc, 3.0 / 13.0}},
      {"lambda_cs", {r.lambda_cs, 1.0}},       {"lambda_to", {r.lambda_to, 0.15}},
      {"lambda_ac", {r.lambda_ac, 2.0}},       {"lambda_ed", {r.lambda_ed, 1.0}}};
  for (const auto& [name, v] : rows) {
    c.expect(std::abs(v.first - v.second) <= 1e-9, std::string(name) + " = " + num(v.first) + ", want " + num(v.second));
  }
  c.note("10 descriptors checked");
  return c.done();
}

// ---- 2 ----
Outcome transition_model() {
  Checks c;
  const AgilityProfile standard = agility_profile(AgilityName::kStandard);
  for (int i = 0; i <= 100; ++i) {
    const double g = i * 0.1;
    c.expect(std::abs(transition_time(g, standard) - 11.66) < 1e-12, "Trans(" + num(g) + ") != 11.66");
  }
  double worst_jump = 0;
  for (double b : AgilityProfile::kBreakpointsDeg) {
    if (b <= 0) continue;
    const double jump = std::abs(transition_time(b + 1e-9, standard) - transition_time(b, standard));
    worst_jump = std::max(worst_jump, jump);
    c.expect(jump <= 1e-6, "jump " + num(jump) + " s at " + num(b) + " deg");
  }
  const AgilityProfile high = agility_profile(AgilityName::kHigh);
  const AgilityProfile low = agility_profile(AgilityName::kLow);
  const AgilityProfile limited = agility_profile(AgilityName::kLimited);
  double prev = 0;
  for (int i = 0; i <= 1800; ++i) {
    const double g = i * 0.1;
    const double s = transition_time(g, standard);
    c.expect(s >= prev, "decrease at " + num(g));
    prev = s;
    c.expect(transition_time(g, high) <= s && s <= transition_time(g, low) &&
                 transition_time(g, low) <= transition_time(g, limited),
             "dominance broken at " + num(g));
  }
  c.note("largest breakpoint jump " + num(worst_jump) + " s");
  return c.done();
}

// ---- 3 ----
Outcome enumeration_counts() {
  Checks c;
  const auto standard = enumerate_standard();
  const auto specific = enumerate_specific();
  c.expect(standard.size() == 1104, "standard " + std::to_string(standard.size()));
  c.expect(specific.size() == 286, "specific " + std::to_string(specific.size()));
  int per_family[5] = {0, 0, 0, 0, 0};
  for (const ScenarioTemplate& t : specific) ++per_family[static_cast<int>(t.family)];
  c.expect(per_family[1] == 120 && per_family[2] == 36 && per_family[3] == 120 && per_family[4] == 10,
           "family split " + std::to_string(per_family[1]) + "/" + std::to_string(per_family[2]) + "/" +
               std::to_string(per_family[3]) + "/" + std::to_string(per_family[4]));
  const std::size_t slots = (standard.size() + specific.size()) * TargetPool::kSubsets;
  c.expect(slots == 13900, "slots " + std::to_string(slots));
  c.note(std::to_string(standard.size()) + " + " + std::to_string(specific.size()) + " templates, " +
         std::to_string(slots) + " slots");
  return c.done();
}

// ---- 4 ----
Outcome exact_vs_brute_force() {
  Checks c;
  int compared = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Instance inst = testing::random_instance(mix_seed({4, s}));
    if (candidate_assignments(inst).size() > 12) {
      c.expect(false, "instance " + std::to_string(s) + " exceeds 12 candidates");
      continue;
    }
    const testing::OracleScores best = testing::brute_force_optimum(inst);
    for (Objective o : kObjectives) {
      SolverConfig cfg;
      cfg.solver = SolverKind::kExactBB;
      cfg.objective = o;
      const SolveResult r = solve(inst, cfg);
      const double got = score_of(testing::oracle_scores(r.schedule, inst), o);
      c.expect(r.complete, "search incomplete on " + std::to_string(s));
      c.expect(validate_schedule(r.schedule, inst).pass, "infeasible on " + std::to_string(s));
      c.expect(std::abs(got - score_of(best, o)) <= 1e-9,
               "seed " + std::to_string(s) + " " + std::string(to_string(o)) + ": " + num(got) + " vs " +
                   num(score_of(best, o)));
      ++compared;
    }
  }
  c.note(std::to_string(compared) + " (instance, objective) pairs");
  return c.done();
}

// ---- 5 ----
Outcome fuzz_feasibility() {
  Checks c;
  testing::RandomSpecOptions o;
  o.max_sats = 4;
  o.max_tasks = 15;
  o.max_candidates = 150;
  o.max_slack_s = 20;
  int schedules = 0, subsets = 0, incomplete = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Instance inst = testing::random_instance(mix_seed({5, s}), o);
    std::vector<Schedule> returned;
    for (SolverKind k : kAllSolvers) {
      SolverConfig cfg;
      cfg.solver = k;
      cfg.objective = kObjectives[s % 3];
      cfg.seed = s;
      cfg.bb_node_limit = 200'000;
      const SolveResult r = solve(inst, cfg);
      incomplete += !r.complete;
      const bool pass = validate_schedule(r.schedule, inst).pass;
      c.expect(pass, std::string(to_string(k)) + " infeasible on instance " + std::to_string(s));
      if (pass) returned.push_back(r.schedule);
      ++schedules;
    }
    Rng rng(mix_seed({55, s}));
    for (int k = 0; k < 10 && !returned.empty(); ++k) {
      Schedule sub = returned[static_cast<std::size_t>(k) % returned.size()];
      std::erase_if(sub.assignments, [&](const Assignment&) { return rng.bernoulli(0.5); });
      c.expect(validate_schedule(sub, inst).pass, "subset of a passing schedule fails on " + std::to_string(s));
      ++subsets;
    }
  }
  c.expect(subsets == 10000, "only " + std::to_string(subsets) + " subsets sampled");
  c.note(std::to_string(schedules) + " schedules, " + std::to_string(subsets) + " subsets, " +
         std::to_string(incomplete) + " budget-cut runs");
  return c.done();
}

// ---- 6 ----
Outcome metric_properties() {
  Checks c;
  SyntheticSpec spec;
  spec.horizon_s = 100;
  spec.satellites = {synthetic_satellite("S1"), synthetic_satellite("S2")};
  spec.tasks = {{"T1", 10, 3, 1}, {"T2", 10, 7, 1}};
  spec.windows = {{"T1", "S1", 0, 100, {}}, {"T2", "S2", 0, 100, {}}};
  spec.transition_s = 1;
  spec.slot_step_s = 5;
  const Instance pair = build_synthetic_instance(spec);
  Schedule empty;
  empty.instance_id = pair.id;
  const MetricReport e = evaluate(empty, pair, 0);
  c.expect(e.tp == 0 && e.tcr == 0 && e.tm == 1 && !e.bd, "empty schedule metrics");
  Schedule at_zero = empty;
  for (const Assignment& a : candidate_assignments(pair)) {
    if (a.start_s == 0) at_zero.assignments.push_back(a);
  }
  const MetricReport z = evaluate(at_zero, pair, 0);
  c.expect(z.tcr == 1 && z.tm == 0 && z.bd && *z.bd == 1, "balanced t0 schedule metrics");

  testing::RandomSpecOptions o;
  o.max_tasks = 8;
  o.max_candidates = 40;
  o.max_slack_s = 10;
  double worst = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Instance inst = testing::random_instance(mix_seed({6, s}), o);
    const InstanceIndex index(inst);
    PlanState plan(index);
    Rng rng(s);
    for (int k = 0; k < 20; ++k) {
      const int opp = static_cast<int>(rng.index(static_cast<std::size_t>(index.opp_count())));
      if (!plan.is_assigned(index.opp(opp).task) && plan.can_insert(opp)) plan.insert(opp);
    }
    const Schedule sched = plan.to_schedule("random");
    const MetricReport r = evaluate(sched, inst, 0);
    const testing::OracleScores want = testing::oracle_scores(sched, inst);
    double err = std::max({std::abs(r.tp - want.tp), std::abs(r.tcr - want.tcr), std::abs(r.tm - want.tm),
                           std::abs(r.composite_all - want.all)});
    c.expect(r.bd.has_value() == want.bd.has_value(), "balance definedness on " + std::to_string(s));
    if (r.bd && want.bd) err = std::max(err, std::abs(*r.bd - *want.bd));
    worst = std::max(worst, err);
    c.expect(err <= 1e-12, "oracle mismatch " + num(err) + " on " + std::to_string(s));
  }
  c.note("200 random schedules, max error " + num(worst));
  return c.done();
}

// ---- 7 ----
DescriptorReport scenario_mean(const std::string& id) {
  const auto tpl = find_template(id);
  if (!tpl) throw DomainError("no template " + id);
  std::vector<DescriptorReport> reports;
  for (int seed = 0; seed < 10; ++seed) reports.push_back(characterise(generate_instance(*tpl, seed)));
  return aggregate(reports, id);
}

Outcome structural_trends() {
  Checks c;
  const DescriptorReport h12 = scenario_mean("std-agile-h12-s10-t100-global");
  const DescriptorReport h24 = scenario_mean("std-agile-h24-s10-t100-global");
  const DescriptorReport h72 = scenario_mean("std-agile-h72-s10-t100-global");
  c.expect(h12.gamma_ao <= h24.gamma_ao && h24.gamma_ao <= h72.gamma_ao, "gamma_ao not non-decreasing");
  c.expect(h12.gamma_oc >= h24.gamma_oc && h24.gamma_oc >= h72.gamma_oc, "gamma_oc not non-increasing");
  const DescriptorReport clustered = scenario_mean("std-agile-h12-s10-t100-clustered");
  c.expect(clustered.lambda_oc > h12.lambda_oc, "clustered lambda_oc not above global");
  c.note("gamma_ao " + num(h12.gamma_ao) + "/" + num(h24.gamma_ao) + "/" + num(h72.gamma_ao) + ", gamma_oc " +
         num(h12.gamma_oc) + "/" + num(h24.gamma_oc) + "/" + num(h72.gamma_oc) + ", lambda_oc clustered " +
         num(clustered.lambda_oc) + " vs global " + num(h12.lambda_oc));
  return c.done();
}

// ---- 8 ----
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome campaign_determinism() {
  Checks c;
  const fs::path root = fs::temp_directory_path() / ("eosb-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(root);
  auto run = [&](const std::string& name, int jobs) {
    const fs::path out = root / name;
    const std::string manifest =
        R"({"schema_version":1,"type":"campaign_manifest","out_dir":")" + out.string() + R"(","jobs":)" +
        std::to_string(jobs) +
        R"(,"scenarios":["std-agile-h12-s1-t10-global","std-nonagile-h12-s3-t10-global"],"seeds":10,)"
        R"("solvers":[{"solver":"greedy_tp"},)"
        R"({"solver":"sa","objective":"all","seed":7,"time_limit_s":3600},)"
        R"({"solver":"aco","objective":"tcr","seed":7,"time_limit_s":3600}]})";
    CampaignOptions opts;
    opts.cache_dir = (out / "instances").string();
    const CampaignResult r = run_campaign(parse_manifest(manifest), opts);
    for (const RunRecord& rec : r.records) c.expect(rec.ok, name + ": run failed: " + rec.error);
    c.expect(slurp(out / "results.csv") == r.results_csv, name + ": results.csv differs from returned table");
    return r;
  };
  const CampaignResult first = run("first", 1);
  const CampaignResult second = run("second", 1);
  const CampaignResult wide = run("jobs8", 8);
  const CampaignResult resumed = run("first", 1);
  c.expect(first.records.size() == 60, "expected 60 runs, got " + std::to_string(first.records.size()));
  c.expect(first.results_csv == second.results_csv, "repeat run differs");
  c.expect(first.results_csv == wide.results_csv, "jobs 8 differs from jobs 1");
  c.expect(resumed.computed == 0 && resumed.results_csv == first.results_csv, "resumed run differs");
  c.note("60 runs, " + std::to_string(first.results_csv.size()) + " bytes of results");
  std::error_code ec;
  fs::remove_all(root, ec);
  return c.done();
}

// ---- 9 ----
Outcome solver_quality() {
  Checks c;
  struct Target {
    SolverKind kind;
    int threshold;
  };
  const Target targets[] = {{SolverKind::kSA, 90}, {SolverKind::kGA, 90}, {SolverKind::kACO, 85}};
  std::vector<Instance> instances;
  for (std::uint64_t s = 0; s < 100; ++s) instances.push_back(testing::random_instance(mix_seed({2024, s})));
  for (Objective o : kObjectives) {
    std::vector<double> optimum;
    for (const Instance& inst : instances) {
      SolverConfig cfg;
      cfg.solver = SolverKind::kExactBB;
      cfg.objective = o;
      optimum.push_back(score_of(testing::oracle_scores(solve(inst, cfg).schedule, inst), o));
    }
    for (const Target& t : targets) {
      int hits = 0;
      for (std::size_t i = 0; i < instances.size(); ++i) {
        SolverConfig cfg;
        cfg.solver = t.kind;
        cfg.objective = o;
        cfg.seed = i;
        const double got = score_of(testing::oracle_scores(solve(instances[i], cfg).schedule, instances[i]), o);
        hits += got >= optimum[i] - 1e-9;
      }
      const std::string tag = std::string(to_string(t.kind)) + "/" + std::string(to_string(o));
      c.expect(hits >= t.threshold, tag + " " + std::to_string(hits) + "/100");
      c.note(tag + " " + std::to_string(hits));
    }
  }
  return c.done();
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"descriptor oracle on the worked example", descriptor_oracle},
      {"transition model", transition_model},
      {"scenario enumeration counts", enumeration_counts},
      {"exact search vs brute force", exact_vs_brute_force},
      {"feasibility fuzz and downward closure", fuzz_feasibility},
      {"metric properties", metric_properties},
      {"structural trends", structural_trends},
      {"campaign determinism", campaign_determinism},
      {"micro-instance solver quality", solver_quality},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failed += !out.pass;
    std::printf("criterion %d %s: %s (%.2f s) %s\n", n, out.pass ? "PASS" : "FAIL", name, seconds_since(t0),
                out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
