#include <cmath>
#include <string>

#include "../core/json_util.hpp"
#include "eosb/genlib.hpp"

namespace eosb {
namespace {

constexpr double kDay = 86400.0;
constexpr Distribution kSyntheticDistributions[] = {
    Distribution::kGlobalRandom, Distribution::kRegionClustered, Distribution::kHybrid};
constexpr Platform kPlatforms[] = {Platform::kAgile, Platform::kNonAgile};

struct Baseline {
  int satellites;
  int tasks;
};
constexpr Baseline kBaselines[] = {{3, 200}, {10, 500}, {100, 500}, {500, 2000}};

ConstellationSpec default_constellation(int satellites) {
  ConstellationSpec c;
  if (satellites <= static_cast<int>(real_satellites().size())) {
    c.real_count = satellites;
  } else {
    c.walker = true;
    c.config = default_walker_config(satellites);
  }
  return c;
}

std::string make_id(const ScenarioTemplate& t, std::string_view extra) {
  static const char* const prefixes[] = {"std", "cap", "agi", "con", "real"};
  std::string id = prefixes[static_cast<int>(t.family)];
  id += t.platform == Platform::kAgile ? "-agile" : "-nonagile";
  id += "-h" + std::to_string(static_cast<long>(std::lround(t.horizon_s / 3600.0)));
  id += "-s" + std::to_string(t.constellation.total());
  id += "-t" + std::to_string(t.task_count);
  id += "-";
  id += to_string(t.distribution);
  if (!extra.empty()) {
    id += "-";
    id += extra;
  }
  return id;
}

ScenarioTemplate base(Family f, Platform p, double horizon, int sats, int tasks, Distribution d) {
  ScenarioTemplate t;
  t.family = f;
  t.platform = p;
  t.horizon_s = horizon;
  t.constellation = default_constellation(sats);
  t.task_count = tasks;
  t.distribution = d;
  return t;
}

std::string extra_token(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == '_') c = '-';
  }
  return out;
}

}  // namespace

std::vector<ScenarioTemplate> enumerate_standard() {
  std::vector<ScenarioTemplate> out;
  for (const auto& [sats, loads] : mission_load_table()) {
    for (int tasks : loads) {
      for (double days : {0.5, 1.0, 3.0, 7.0}) {
        for (Distribution d : kSyntheticDistributions) {
          for (Platform p : kPlatforms) {
            ScenarioTemplate t = base(Family::kStandard, p, days * kDay, sats, tasks, d);
            t.id = make_id(t, {});
            out.push_back(std::move(t));
          }
        }
      }
    }
  }
  return out;
}

std::vector<ScenarioTemplate> enumerate_specific() {
  std::vector<ScenarioTemplate> out;
  for (const Baseline& b : kBaselines) {
    for (CapacityPattern c : {CapacityPattern::kLow, CapacityPattern::kHigh, CapacityPattern::kMixedA,
                              CapacityPattern::kMixedB, CapacityPattern::kMixedC}) {
      for (Distribution d : kSyntheticDistributions) {
        for (Platform p : kPlatforms) {
          ScenarioTemplate t = base(Family::kCapacity, p, kDay, b.satellites, b.tasks, d);
          t.capacity = c;
          t.id = make_id(t, extra_token(to_string(c)));
          out.push_back(std::move(t));
        }
      }
    }
  }
  for (const Baseline& b : kBaselines) {
    for (AgilityName a : {AgilityName::kHigh, AgilityName::kLow, AgilityName::kLimited}) {
      for (Distribution d : kSyntheticDistributions) {
        ScenarioTemplate t = base(Family::kManoeuvrability, Platform::kAgile, kDay, b.satellites,
                                  b.tasks, d);
        t.agility = a;
        t.id = make_id(t, to_string(a));
        out.push_back(std::move(t));
      }
    }
  }
  static const std::pair<int, std::array<int, 2>> scales[] = {
      {50, {100, 200}}, {100, {100, 300}}, {200, {100, 500}}, {500, {100, 1000}}, {1000, {100, 1000}}};
  for (const auto& [sats, loads] : scales) {
    for (int tasks : loads) {
      for (WalkerVariant v : {WalkerVariant::kFewPlanes, WalkerVariant::kManyPlanes}) {
        for (Distribution d : kSyntheticDistributions) {
          for (Platform p : kPlatforms) {
            ScenarioTemplate t = base(Family::kConstellation, p, kDay, sats, tasks, d);
            t.walker_variant = v;
            t.constellation.config = walker_config(sats, v);
            t.id = make_id(t, extra_token(to_string(v)));
            out.push_back(std::move(t));
          }
        }
      }
    }
  }
  for (int sats : {1, 3, 5, 10, 20}) {
    for (Platform p : kPlatforms) {
      ScenarioTemplate t = base(Family::kRealistic, p, kDay, sats, 100, Distribution::kRealCities);
      t.id = make_id(t, {});
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<ScenarioTemplate> enumerate_all() {
  std::vector<ScenarioTemplate> out = enumerate_standard();
  std::vector<ScenarioTemplate> specific = enumerate_specific();
  out.insert(out.end(), specific.begin(), specific.end());
  return out;
}

std::optional<ScenarioTemplate> find_template(const std::string& id) {
  for (ScenarioTemplate& t : enumerate_all()) {
    if (t.id == id) return std::move(t);
  }
  return std::nullopt;
}

std::string template_json(const ScenarioTemplate& t) {
  nlohmann::json c;
  if (t.constellation.walker) {
    c = {{"kind", "walker"},
         {"planes", t.constellation.config.planes},
         {"per_plane", t.constellation.config.per_plane}};
  } else {
    c = {{"kind", "real"}, {"count", t.constellation.real_count}};
  }
  nlohmann::json j = {
      {"schema_version", kSchemaVersion},
      {"type", "scenario_template"},
      {"id", t.id},
      {"family", to_string(t.family)},
      {"platform", to_string(t.platform)},
      {"horizon_s", t.horizon_s},
      {"constellation", c},
      {"task_count", t.task_count},
      {"distribution", to_string(t.distribution)},
      {"capacity", to_string(t.capacity)},
      {"agility", to_string(t.agility)},
      {"walker_variant", to_string(t.walker_variant)},
      {"window_step_s", t.window_step_s},
  };
  if (t.slot_step_s) j["slot_step_s"] = *t.slot_step_s;
  return j.dump() + "\n";
}

namespace {

ScenarioTemplate template_from_json(const nlohmann::json& j) {
  using namespace jsonutil;
  ScenarioTemplate t;
  try {
    t.id = get<std::string>(j, "id", "");
    t.family = parse_family(get<std::string>(j, "family", ""));
    t.platform = parse_platform(get<std::string>(j, "platform", ""));
    t.horizon_s = get<double>(j, "horizon_s", "");
    const json& c = at(j, "constellation", "");
    const std::string kind = get<std::string>(c, "kind", "/constellation");
    if (kind == "walker") {
      t.constellation.walker = true;
      t.constellation.config.planes = get<int>(c, "planes", "/constellation");
      t.constellation.config.per_plane = get<int>(c, "per_plane", "/constellation");
    } else if (kind == "real") {
      t.constellation.real_count = get<int>(c, "count", "/constellation");
    } else {
      throw ParseError("unknown constellation kind '" + kind + "'", "/constellation/kind");
    }
    t.task_count = get<int>(j, "task_count", "");
    t.distribution = parse_distribution(get<std::string>(j, "distribution", ""));
    t.capacity = parse_capacity_pattern(get_or<std::string>(j, "capacity", "standard", ""));
    t.agility = parse_agility_name(get_or<std::string>(j, "agility", "standard", ""));
    t.walker_variant = parse_walker_variant(get_or<std::string>(j, "walker_variant", "default", ""));
    t.window_step_s = get_or<double>(j, "window_step_s", 10.0, "");
    if (j.contains("slot_step_s")) t.slot_step_s = get<double>(j, "slot_step_s", "");
  } catch (const DomainError& e) {
    throw ParseError(e.what(), "/");
  }
  return t;
}

}  // namespace

ScenarioTemplate parse_template_json(std::string_view bytes) {
  using namespace jsonutil;
  const json j = parse(bytes);
  expect_schema(j, "scenario_template");
  return template_from_json(j);
}

}  // namespace eosb
