#include <cmath>
#include <cstdio>
#include <map>

#include "../core/json_util.hpp"
#include "eosb/astro.hpp"
#include "eosb/bench.hpp"

namespace eosb {

using nlohmann::json;

std::string export_scene(const Instance& inst, const Schedule& schedule) {
  if (!validate_schedule(schedule, inst).pass) {
    throw InfeasibleScheduleError("scene export refuses an infeasible schedule");
  }
  json sats = json::array();
  for (const SatelliteSpec& sat : inst.satellites) {
    json track = json::array();
    const auto steps = static_cast<long long>(std::floor(inst.horizon_s / kSceneTrackStepS + 1e-9));
    for (long long k = 0; k <= steps; ++k) {
      const double t = static_cast<double>(k) * kSceneTrackStepS;
      const SatState s = propagate(sat.elements, t);
      const Geodetic g = subsatellite_point(s);
      track.push_back({{"t_s", t},
                       {"lat_deg", g.lat_deg},
                       {"lon_deg", g.lon_deg},
                       {"alt_km", norm(s.position_km) - kEarthRadiusKm}});
    }
    sats.push_back({{"id", sat.id}, {"track", track}});
  }

  json targets = json::array();
  std::map<std::string, int> durations;
  for (const TaskSpec& t : inst.tasks) {
    targets.push_back({{"id", t.id},
                       {"lat_deg", t.lat_deg},
                       {"lon_deg", t.lon_deg},
                       {"profit", t.profit},
                       {"priority", t.priority}});
    durations[t.id] = t.duration_s;
  }

  json links = json::array();
  int n = 0;
  for (const Assignment& a : schedule.assignments) {
    char id[32];
    std::snprintf(id, sizeof id, "link-%04d", ++n);
    links.push_back({{"id", id},
                     {"satellite_id", a.satellite_id},
                     {"task_id", a.task_id},
                     {"start_s", a.start_s},
                     {"end_s", a.start_s + durations.at(a.task_id)}});
  }

  const json scene = {{"schema_version", kSchemaVersion},
                      {"type", "scene"},
                      {"instance_id", inst.id},
                      {"solver", schedule.solver},
                      {"epoch", inst.epoch},
                      {"horizon_s", inst.horizon_s},
                      {"track_step_s", kSceneTrackStepS},
                      {"satellites", sats},
                      {"targets", targets},
                      {"links", links}};
  return scene.dump(1);
}

std::string scene_to_czml(std::string_view bytes) {
  using namespace jsonutil;
  const json scene = parse(bytes);
  expect_schema(scene, "scene");
  const std::string epoch = get<std::string>(scene, "epoch", "");
  const double t0 = parse_epoch_unix_s(epoch);
  const double horizon = get<double>(scene, "horizon_s", "");
  auto iso = [&](double t) { return format_epoch(t0 + t); };

  json doc = json::array();
  doc.push_back({{"id", "document"},
                 {"name", get<std::string>(scene, "instance_id", "")},
                 {"version", "1.0"},
                 {"clock",
                  {{"interval", iso(0) + "/" + iso(horizon)}, {"currentTime", iso(0)}, {"multiplier", 60}}}});

  for (const json& sat : array_at(scene, "satellites", "")) {
    json positions = json::array();
    for (const json& p : array_at(sat, "track", "/satellites")) {
      positions.push_back(get<double>(p, "t_s", "/track"));
      positions.push_back(get<double>(p, "lon_deg", "/track"));
      positions.push_back(get<double>(p, "lat_deg", "/track"));
      positions.push_back(get<double>(p, "alt_km", "/track") * 1000.0);
    }
    const std::string id = get<std::string>(sat, "id", "/satellites");
    doc.push_back({{"id", "sat/" + id},
                   {"name", id},
                   {"position", {{"epoch", epoch}, {"cartographicDegrees", positions}}},
                   {"point", {{"pixelSize", 6}, {"color", {{"rgba", {255, 200, 0, 255}}}}}},
                   {"path", {{"width", 1}, {"leadTime", 0}, {"trailTime", 5400}}}});
  }
  for (const json& t : array_at(scene, "targets", "")) {
    const std::string id = get<std::string>(t, "id", "/targets");
    doc.push_back({{"id", "target/" + id},
                   {"name", id},
                   {"position",
                    {{"cartographicDegrees",
                      {get<double>(t, "lon_deg", "/targets"), get<double>(t, "lat_deg", "/targets"), 0.0}}}},
                   {"point", {{"pixelSize", 4}, {"color", {{"rgba", {80, 160, 255, 255}}}}}}});
  }
  for (const json& l : array_at(scene, "links", "")) {
    const std::string sat = get<std::string>(l, "satellite_id", "/links");
    const std::string task = get<std::string>(l, "task_id", "/links");
    doc.push_back(
        {{"id", get<std::string>(l, "id", "/links")},
         {"availability", iso(get<double>(l, "start_s", "/links")) + "/" + iso(get<double>(l, "end_s", "/links"))},
         {"polyline",
          {{"positions", {{"references", {"sat/" + sat + "#position", "target/" + task + "#position"}}}},
           {"width", 2},
           {"material", {{"solidColor", {{"color", {{"rgba", {0, 255, 120, 255}}}}}}}}}}});
  }
  return doc.dump(1);
}

}  // namespace eosb
