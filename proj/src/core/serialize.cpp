#include "eosb/serialize.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json_util.hpp"

namespace eosb {
namespace {

using jsonutil::array_at;
using jsonutil::get;
using jsonutil::get_or;
using nlohmann::json;

json to_json(const SatelliteSpec& s) {
  const OrbitalElements& o = s.elements;
  return {
      {"id", s.id},
      {"elements",
       {{"semi_major_axis_km", o.semi_major_axis_km},
        {"eccentricity", o.eccentricity},
        {"inclination_deg", o.inclination_deg},
        {"raan_deg", o.raan_deg},
        {"arg_perigee_deg", o.arg_perigee_deg},
        {"true_anomaly_deg", o.true_anomaly_deg},
        {"epoch", o.epoch}}},
      {"envelope",
       {{"platform", to_string(s.envelope.platform)},
        {"max_roll_deg", s.envelope.max_roll_deg},
        {"max_pitch_deg", s.envelope.max_pitch_deg},
        {"max_yaw_deg", s.envelope.max_yaw_deg}}},
      {"capacities",
       {{"energy_per_orbit", s.capacities.energy_per_orbit},
        {"storage_per_orbit", s.capacities.storage_per_orbit}}},
      {"rates",
       {{"obs_energy_rate", s.rates.obs_energy_rate},
        {"obs_memory_rate", s.rates.obs_memory_rate},
        {"slew_energy_rate", s.rates.slew_energy_rate}}},
      {"agility",
       {{"name", to_string(s.agility.name)},
        {"velocity_deg_s", s.agility.velocity_deg_s},
        {"offset_s", s.agility.offset_s}}},
  };
}

SatelliteSpec satellite_from_json(const json& j, const std::string& path) {
  SatelliteSpec s;
  s.id = get<std::string>(j, "id", path);
  const std::string ep = path + "/elements";
  const json& e = jsonutil::at(j, "elements", path);
  s.elements.semi_major_axis_km = get<double>(e, "semi_major_axis_km", ep);
  s.elements.eccentricity = get<double>(e, "eccentricity", ep);
  s.elements.inclination_deg = get<double>(e, "inclination_deg", ep);
  s.elements.raan_deg = get<double>(e, "raan_deg", ep);
  s.elements.arg_perigee_deg = get<double>(e, "arg_perigee_deg", ep);
  s.elements.true_anomaly_deg = get<double>(e, "true_anomaly_deg", ep);
  s.elements.epoch = get<std::string>(e, "epoch", ep);
  const std::string vp = path + "/envelope";
  const json& v = jsonutil::at(j, "envelope", path);
  try {
    s.envelope.platform = parse_platform(get<std::string>(v, "platform", vp));
  } catch (const DomainError& err) {
    throw ParseError(err.what(), vp + "/platform");
  }
  s.envelope.max_roll_deg = get<double>(v, "max_roll_deg", vp);
  s.envelope.max_pitch_deg = get<double>(v, "max_pitch_deg", vp);
  s.envelope.max_yaw_deg = get<double>(v, "max_yaw_deg", vp);
  const std::string cp = path + "/capacities";
  const json& c = jsonutil::at(j, "capacities", path);
  s.capacities.energy_per_orbit = get<double>(c, "energy_per_orbit", cp);
  s.capacities.storage_per_orbit = get<double>(c, "storage_per_orbit", cp);
  const std::string rp = path + "/rates";
  const json& r = jsonutil::at(j, "rates", path);
  s.rates.obs_energy_rate = get<double>(r, "obs_energy_rate", rp);
  s.rates.obs_memory_rate = get<double>(r, "obs_memory_rate", rp);
  s.rates.slew_energy_rate = get<double>(r, "slew_energy_rate", rp);
  const std::string ap = path + "/agility";
  const json& a = jsonutil::at(j, "agility", path);
  try {
    s.agility.name = parse_agility_name(get<std::string>(a, "name", ap));
  } catch (const DomainError& err) {
    throw ParseError(err.what(), ap + "/name");
  }
  s.agility.velocity_deg_s = get<std::array<double, 4>>(a, "velocity_deg_s", ap);
  s.agility.offset_s = get<std::array<double, 4>>(a, "offset_s", ap);
  return s;
}

json to_json(const TaskSpec& t) {
  return {{"id", t.id},       {"lat_deg", t.lat_deg}, {"lon_deg", t.lon_deg},
          {"priority", t.priority}, {"profit", t.profit}, {"duration_s", t.duration_s}};
}

TaskSpec task_from_json(const json& j, const std::string& path) {
  TaskSpec t;
  t.id = get<std::string>(j, "id", path);
  t.lat_deg = get<double>(j, "lat_deg", path);
  t.lon_deg = get<double>(j, "lon_deg", path);
  t.priority = get<int>(j, "priority", path);
  t.profit = get<int>(j, "profit", path);
  t.duration_s = get<int>(j, "duration_s", path);
  return t;
}

json to_json(const VisibleWindow& w) {
  json track = json::array();
  for (const AttitudeSample& a : w.attitude_track) {
    track.push_back({a.t_s, a.angles.roll_deg, a.angles.pitch_deg, a.angles.yaw_deg});
  }
  json out = {{"task_id", w.task_id},
              {"satellite_id", w.satellite_id},
              {"start_s", w.start_s},
              {"end_s", w.end_s},
              {"attitude_track", std::move(track)}};
  if (w.fixed_roll_deg) out["fixed_roll_deg"] = *w.fixed_roll_deg;
  return out;
}

VisibleWindow window_from_json(const json& j, const std::string& path) {
  VisibleWindow w;
  w.task_id = get<std::string>(j, "task_id", path);
  w.satellite_id = get<std::string>(j, "satellite_id", path);
  w.start_s = get<double>(j, "start_s", path);
  w.end_s = get<double>(j, "end_s", path);
  const json& track = array_at(j, "attitude_track", path);
  w.attitude_track.reserve(track.size());
  for (std::size_t k = 0; k < track.size(); ++k) {
    const json& s = track[k];
    if (!s.is_array() || s.size() != 4) {
      throw ParseError("attitude sample must be [t, roll, pitch, yaw]",
                       path + "/attitude_track/" + std::to_string(k));
    }
    try {
      w.attitude_track.push_back(
          {s[0].get<double>(), {s[1].get<double>(), s[2].get<double>(), s[3].get<double>()}});
    } catch (const json::exception& e) {
      throw ParseError(e.what(), path + "/attitude_track/" + std::to_string(k));
    }
  }
  if (j.contains("fixed_roll_deg")) w.fixed_roll_deg = get<double>(j, "fixed_roll_deg", path);
  return w;
}

std::string_view kind_name(InstanceKind k) {
  return k == InstanceKind::kGenerated ? "generated" : "synthetic";
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  json sats = json::array();
  for (const SatelliteSpec& s : inst.satellites) sats.push_back(to_json(s));
  json tasks = json::array();
  for (const TaskSpec& t : inst.tasks) tasks.push_back(to_json(t));
  json wins = json::array();
  for (const VisibleWindow& w : inst.visible_windows) wins.push_back(to_json(w));
  json opps = json::array();
  for (const AvailableOpportunity& o : inst.opportunities) opps.push_back({o.window_index, o.start_s});
  json doc = {
      {"schema_version", kSchemaVersion},
      {"type", "instance"},
      {"id", inst.id},
      {"kind", kind_name(inst.kind)},
      {"horizon_s", inst.horizon_s},
      {"platform", to_string(inst.platform)},
      {"epoch", inst.epoch},
      {"slot_step_s", inst.slot_step_s},
      {"provenance",
       {{"scenario_id", inst.provenance.scenario_id},
        {"seed", inst.provenance.seed},
        {"note", inst.provenance.note},
        {"fallback", inst.provenance.fallback}}},
      {"satellites", std::move(sats)},
      {"tasks", std::move(tasks)},
      {"visible_windows", std::move(wins)},
      {"opportunities", std::move(opps)},
  };
  if (inst.fixed_transition_s) doc["fixed_transition_s"] = *inst.fixed_transition_s;
  return doc.dump() + "\n";
}

Instance deserialize_instance(std::string_view bytes) {
  const json doc = jsonutil::parse(bytes);
  jsonutil::expect_schema(doc, "instance");
  Instance inst;
  inst.id = get<std::string>(doc, "id", "");
  const std::string kind = get<std::string>(doc, "kind", "");
  if (kind == "generated") {
    inst.kind = InstanceKind::kGenerated;
  } else if (kind == "synthetic") {
    inst.kind = InstanceKind::kSynthetic;
  } else {
    throw ParseError("unknown instance kind '" + kind + "'", "/kind");
  }
  inst.horizon_s = get<double>(doc, "horizon_s", "");
  try {
    inst.platform = parse_platform(get<std::string>(doc, "platform", ""));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), "/platform");
  }
  inst.epoch = get<std::string>(doc, "epoch", "");
  inst.slot_step_s = get<double>(doc, "slot_step_s", "");
  if (doc.contains("fixed_transition_s")) {
    inst.fixed_transition_s = get<double>(doc, "fixed_transition_s", "");
  }
  const json& prov = jsonutil::at(doc, "provenance", "");
  inst.provenance.scenario_id = get<std::string>(prov, "scenario_id", "/provenance");
  inst.provenance.seed = get<std::int64_t>(prov, "seed", "/provenance");
  inst.provenance.note = get_or<std::string>(prov, "note", "", "/provenance");
  inst.provenance.fallback = get_or<bool>(prov, "fallback", false, "/provenance");

  const json& sats = array_at(doc, "satellites", "");
  for (std::size_t k = 0; k < sats.size(); ++k) {
    inst.satellites.push_back(satellite_from_json(sats[k], "/satellites/" + std::to_string(k)));
  }
  const json& tasks = array_at(doc, "tasks", "");
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    inst.tasks.push_back(task_from_json(tasks[k], "/tasks/" + std::to_string(k)));
  }
  const json& wins = array_at(doc, "visible_windows", "");
  for (std::size_t k = 0; k < wins.size(); ++k) {
    inst.visible_windows.push_back(
        window_from_json(wins[k], "/visible_windows/" + std::to_string(k)));
  }

  std::unordered_map<std::string, int> duration;
  for (const TaskSpec& t : inst.tasks) duration[t.id] = t.duration_s;
  const json& opps = array_at(doc, "opportunities", "");
  inst.opportunities.reserve(opps.size());
  for (std::size_t k = 0; k < opps.size(); ++k) {
    const std::string path = "/opportunities/" + std::to_string(k);
    const json& o = opps[k];
    if (!o.is_array() || o.size() != 2 || !o[0].is_number_unsigned() || !o[1].is_number()) {
      throw ParseError("opportunity must be [window_index, start_s]", path);
    }
    const std::size_t w = o[0].get<std::size_t>();
    if (w >= inst.visible_windows.size()) throw ParseError("window index out of range", path);
    const VisibleWindow& win = inst.visible_windows[w];
    auto d = duration.find(win.task_id);
    if (d == duration.end()) throw ParseError("window references unknown task", path);
    AvailableOpportunity op;
    op.task_id = win.task_id;
    op.satellite_id = win.satellite_id;
    op.window_index = w;
    op.start_s = o[1].get<double>();
    op.end_s = op.start_s + d->second;
    inst.opportunities.push_back(std::move(op));
  }
  return inst;
}

std::string serialize_schedule(const Schedule& s) {
  json as = json::array();
  for (const Assignment& a : s.assignments) {
    as.push_back({{"satellite_id", a.satellite_id},
                  {"task_id", a.task_id},
                  {"opportunity", a.opportunity},
                  {"start_s", a.start_s}});
  }
  json doc = {{"schema_version", kSchemaVersion},
              {"type", "schedule"},
              {"instance_id", s.instance_id},
              {"solver", s.solver},
              {"wall_time_s", s.wall_time_s},
              {"search_complete", s.search_complete},
              {"assignments", std::move(as)}};
  return doc.dump() + "\n";
}

Schedule deserialize_schedule(std::string_view bytes) {
  const json doc = jsonutil::parse(bytes);
  jsonutil::expect_schema(doc, "schedule");
  Schedule s;
  s.instance_id = get<std::string>(doc, "instance_id", "");
  s.solver = get<std::string>(doc, "solver", "");
  s.wall_time_s = get<double>(doc, "wall_time_s", "");
  s.search_complete = get_or<bool>(doc, "search_complete", true, "");
  const json& as = array_at(doc, "assignments", "");
  for (std::size_t k = 0; k < as.size(); ++k) {
    const std::string path = "/assignments/" + std::to_string(k);
    Assignment a;
    a.satellite_id = get<std::string>(as[k], "satellite_id", path);
    a.task_id = get<std::string>(as[k], "task_id", path);
    a.opportunity = get<std::size_t>(as[k], "opportunity", path);
    a.start_s = get<double>(as[k], "start_s", path);
    s.assignments.push_back(std::move(a));
  }
  return s;
}

std::string instance_digest(const Instance& instance) {
  return sha256_hex(serialize_instance(instance));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace eosb
