// Two-body propagation, viewing geometry and access windows.
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "eosb/core.hpp"

namespace eosb {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(Vec3 a);
Vec3 unit(Vec3 a);

struct Geodetic {
  double lat_deg = 0;
  double lon_deg = 0;
};

// Inertial state plus the Earth rotation angle needed for ground frames.
struct SatState {
  Vec3 position_km;
  Vec3 velocity_km_s;
  double time_s = 0;
  double earth_angle_rad = 0;
};

inline constexpr double kNonAgilePitchToleranceDeg = 2.5;
inline constexpr double kKeplerToleranceRad = 1e-12;

// Seconds since the Unix epoch for "YYYY-MM-DDTHH:MM:SS[.fff]Z".
double parse_epoch_unix_s(std::string_view iso);
// Greenwich mean sidereal angle in radians at the given UTC epoch.
double gmst_rad(std::string_view iso);
std::string format_epoch(double unix_s);

double solve_kepler(double mean_anomaly_rad, double eccentricity);
double true_to_mean_anomaly(double true_anomaly_rad, double eccentricity);
double mean_to_true_anomaly(double mean_anomaly_rad, double eccentricity);
SatState propagate(const OrbitalElements& elements, double t_s);
double specific_energy(const SatState& state);

Vec3 target_inertial(Geodetic target, double earth_angle_rad);
Geodetic subsatellite_point(const SatState& state);

std::optional<LookAngles> look_angles(const SatState& state, Geodetic target);
bool within_envelope(const LookAngles& angles, const AttitudeEnvelope& envelope);
bool visibility(const SatState& state, Geodetic target, const AttitudeEnvelope& envelope);

inline constexpr double kDefaultWindowStepS = 10.0;

std::vector<VisibleWindow> compute_visible_windows(const SatelliteSpec& sat, const TaskSpec& task,
                                                   double horizon_s,
                                                   double step_s = kDefaultWindowStepS);

// All (satellite, task) windows, sorted by (task order, satellite order,
// start). Deterministic for any thread count.
std::vector<VisibleWindow> compute_all_windows(const std::vector<SatelliteSpec>& sats,
                                               const std::vector<TaskSpec>& tasks,
                                               double horizon_s,
                                               double step_s = kDefaultWindowStepS,
                                               int threads = 1);

std::vector<AvailableOpportunity> derive_opportunities(const VisibleWindow& window,
                                                       double duration_s, double slot_step_s,
                                                       std::size_t window_index = 0);

}  // namespace eosb
