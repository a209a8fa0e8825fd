#include <cstdio>
#include <map>

#include "eosb/bench.hpp"

namespace eosb {
namespace {

// Column lookup by header name.
class Table {
 public:
  explicit Table(std::string_view text) : rows_(parse_csv(text)) {
    if (rows_.empty()) throw ParseError("empty table", "csv");
    for (std::size_t i = 0; i < rows_[0].size(); ++i) cols_[rows_[0][i]] = i;
  }
  std::size_t size() const { return rows_.size() - 1; }
  const std::string& cell(std::size_t row, const std::string& col) const {
    const auto it = cols_.find(col);
    if (it == cols_.end()) throw ParseError("missing column '" + col + "'", "csv header");
    const CsvRow& r = rows_.at(row + 1);
    if (it->second >= r.size()) throw ParseError("short row", "csv line " + std::to_string(row + 2));
    return r[it->second];
  }

 private:
  std::vector<CsvRow> rows_;
  std::map<std::string, std::size_t> cols_;
};

double number(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError("bad number '" + s + "'", "csv");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad number '" + s + "'", "csv");
  }
}

}  // namespace

std::vector<SummaryRow> summarise(std::string_view results_csv, std::string_view runtimes_csv,
                                  const std::vector<DescriptorReport>& descriptors) {
  const Table results(results_csv);
  std::map<std::string, double> runtime;  // scenario|seed|solver
  if (!runtimes_csv.empty()) {
    const Table rt(runtimes_csv);
    for (std::size_t i = 0; i < rt.size(); ++i) {
      if (rt.cell(i, "level") != "instance") continue;
      runtime[rt.cell(i, "scenario") + "|" + rt.cell(i, "seed") + "|" + rt.cell(i, "solver")] =
          number(rt.cell(i, "rt_s"));
    }
  }
  std::map<std::string, const DescriptorReport*> by_id;
  for (const DescriptorReport& d : descriptors) {
    // A scenario-level report wins over an instance report with the same id.
    auto [it, fresh] = by_id.emplace(d.id, &d);
    if (!fresh && d.level == DescriptorLevel::kScenario) it->second = &d;
  }

  struct Acc {
    SummaryRow row;
    int bd_n = 0;
    double bd = 0;
    int rt_n = 0;
  };
  std::vector<Acc> groups;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results.cell(i, "level") != "instance") continue;
    const std::string& scenario = results.cell(i, "scenario");
    const std::string& solver = results.cell(i, "solver");
    auto [it, fresh] = index.emplace(std::make_pair(scenario, solver), groups.size());
    if (fresh) {
      groups.emplace_back();
      groups.back().row.scenario = scenario;
      groups.back().row.solver = solver;
    }
    Acc& g = groups[it->second];
    if (results.cell(i, "status") != "ok") {
      ++g.row.failed;
      continue;
    }
    SummaryRow& r = g.row;
    ++r.runs;
    r.tp += number(results.cell(i, "tp"));
    r.tcr += number(results.cell(i, "tcr"));
    r.tm += number(results.cell(i, "tm"));
    r.composite_all += number(results.cell(i, "composite_all"));
    if (const std::string& bd = results.cell(i, "bd"); !bd.empty()) {
      g.bd += number(bd);
      ++g.bd_n;
    }
    const auto rt = runtime.find(scenario + "|" + results.cell(i, "seed") + "|" + solver);
    if (rt != runtime.end()) {
      r.rt_s += rt->second;
      ++g.rt_n;
    }
  }

  std::vector<SummaryRow> out;
  for (Acc& g : groups) {
    SummaryRow r = g.row;
    if (r.runs > 0) {
      r.tp /= r.runs;
      r.tcr /= r.runs;
      r.tm /= r.runs;
      r.composite_all /= r.runs;
    }
    if (g.bd_n) r.bd = g.bd / g.bd_n;
    r.runtime_missing = g.rt_n < r.runs || r.runs == 0;
    r.rt_s = g.rt_n ? r.rt_s / g.rt_n : 0;
    if (const auto d = by_id.find(r.scenario); d != by_id.end()) r.descriptors = *d->second;
    out.push_back(std::move(r));
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = csv_line({"scenario", "solver", "runs", "failed", "tp", "tcr", "tm", "bd", "rt_s",
                              "composite_all", "descriptors_missing", "gamma_ao", "gamma_oc", "gamma_ti",
                              "gamma_at", "gamma_te", "lambda_oc", "lambda_cs", "lambda_to", "lambda_ac",
                              "lambda_ed"});
  for (const SummaryRow& r : rows) {
    CsvRow line = {r.scenario,
                   r.solver,
                   std::to_string(r.runs),
                   std::to_string(r.failed),
                   format_number(r.tp),
                   format_number(r.tcr),
                   format_number(r.tm),
                   r.bd ? format_number(*r.bd) : "",
                   r.runtime_missing ? "" : format_number(r.rt_s),
                   format_number(r.composite_all),
                   r.descriptors ? "0" : "1"};
    if (const auto& d = r.descriptors) {
      for (double v : {d->gamma_ao, d->gamma_oc, d->gamma_ti, d->gamma_at, d->gamma_te, d->lambda_oc, d->lambda_cs,
                       d->lambda_to, d->lambda_ac, d->lambda_ed}) {
        line.push_back(format_number(v));
      }
    } else {
      line.resize(line.size() + 10);
    }
    out += csv_line(line);
  }
  return out;
}

std::string summary_markdown(const std::vector<SummaryRow>& rows) {
  auto fixed = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  std::string out =
      "| scenario | solver | runs | TP | TCR | TM | BD | RT (s) | ALL | Γ_ao | Γ_oc | Λ_oc |\n"
      "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const SummaryRow& r : rows) {
    out += "| " + r.scenario + " | " + r.solver + " | " + std::to_string(r.runs);
    if (r.failed) out += " (" + std::to_string(r.failed) + " failed)";
    out += " | " + fixed(r.tp) + " | " + fixed(r.tcr) + " | " + fixed(r.tm) + " | " + (r.bd ? fixed(*r.bd) : "n/a") +
           " | " + (r.runtime_missing ? "n/a" : fixed(r.rt_s)) + " | " + fixed(r.composite_all);
    if (r.descriptors) {
      out += " | " + fixed(r.descriptors->gamma_ao) + " | " + fixed(r.descriptors->gamma_oc) + " | " +
             fixed(r.descriptors->lambda_oc) + " |\n";
    } else {
      out += " | missing | missing | missing |\n";
    }
  }
  return out;
}

}  // namespace eosb
