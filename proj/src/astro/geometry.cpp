#include <cmath>

#include "eosb/astro.hpp"

namespace eosb {
namespace {
constexpr double kDeg = kPi / 180.0;
}

Vec3 target_inertial(Geodetic g, double theta) {
  const double lat = g.lat_deg * kDeg;
  const double lon = g.lon_deg * kDeg + theta;
  return {kEarthRadiusKm * std::cos(lat) * std::cos(lon),
          kEarthRadiusKm * std::cos(lat) * std::sin(lon), kEarthRadiusKm * std::sin(lat)};
}

Geodetic subsatellite_point(const SatState& s) {
  const Vec3 r = s.position_km;
  const double lat = std::atan2(r.z, std::hypot(r.x, r.y));
  double lon = std::atan2(r.y, r.x) - s.earth_angle_rad;
  lon = std::remainder(lon, 2.0 * kPi);
  if (lon <= -kPi) lon += 2.0 * kPi;
  return {lat / kDeg, lon / kDeg};
}

std::optional<LookAngles> look_angles(const SatState& s, Geodetic target) {
  const Vec3 tgt = target_inertial(target, s.earth_angle_rad);
  const Vec3 r = s.position_km;
  // Line of sight exists when the satellite is above the target's horizon.
  if (dot(r - tgt, unit(tgt)) <= 0.0) return std::nullopt;
  const Vec3 z = -1.0 * unit(r);
  const Vec3 y = -1.0 * unit(cross(r, s.velocity_km_s));
  const Vec3 x = cross(y, z);
  const Vec3 u = tgt - r;
  const double ux = dot(u, x), uy = dot(u, y), uz = dot(u, z);
  LookAngles a;
  a.pitch_deg = std::atan2(ux, uz) / kDeg;
  a.roll_deg = std::atan2(uy, std::hypot(ux, uz)) / kDeg;
  a.yaw_deg = 0.0;
  return a;
}

bool within_envelope(const LookAngles& a, const AttitudeEnvelope& env) {
  if (std::abs(a.roll_deg) > env.max_roll_deg) return false;
  if (env.platform == Platform::kNonAgile) {
    return std::abs(a.pitch_deg) <= kNonAgilePitchToleranceDeg;
  }
  return std::abs(a.pitch_deg) <= env.max_pitch_deg && std::abs(a.yaw_deg) <= env.max_yaw_deg;
}

bool visibility(const SatState& s, Geodetic target, const AttitudeEnvelope& env) {
  const auto a = look_angles(s, target);
  return a && within_envelope(*a, env);
}

}  // namespace eosb
