// Domain types shared by every eosb module.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eosb {

inline constexpr double kEarthRadiusKm = 6378.137;
inline constexpr double kEarthMuKm3S2 = 398600.4418;
inline constexpr double kEarthRotationRadS = 7.2921159e-5;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr char kDefaultEpoch[] = "2025-11-18T12:00:00Z";
inline constexpr int kSchemaVersion = 1;

// Errors. Validation problems are reported as data; these are for failures.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::string location)
      : std::runtime_error(what + " at " + location), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Platform { kAgile, kNonAgile };

std::string_view to_string(Platform p);
Platform parse_platform(std::string_view s);

struct OrbitalElements {
  double semi_major_axis_km = 7000.0;
  double eccentricity = 0.0;
  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double arg_perigee_deg = 0.0;
  double true_anomaly_deg = 0.0;
  std::string epoch = kDefaultEpoch;  // ISO-8601 UTC

  bool operator==(const OrbitalElements&) const = default;
};

struct AttitudeEnvelope {
  Platform platform = Platform::kAgile;
  double max_roll_deg = 45.0;
  double max_pitch_deg = 45.0;
  double max_yaw_deg = 90.0;

  static AttitudeEnvelope agile() { return {}; }
  static AttitudeEnvelope non_agile() { return {Platform::kNonAgile, 45.0, 0.0, 0.0}; }
  static AttitudeEnvelope for_platform(Platform p) {
    return p == Platform::kAgile ? agile() : non_agile();
  }
  bool operator==(const AttitudeEnvelope&) const = default;
};

struct ResourceCapacities {
  double energy_per_orbit = 200.0;
  double storage_per_orbit = 2400.0;
  bool operator==(const ResourceCapacities&) const = default;
};

struct PayloadRates {
  double obs_energy_rate = 1.0;   // units per second of observation
  double obs_memory_rate = 1.0;   // units per second of observation
  double slew_energy_rate = 1.0;  // units per degree of attitude change
  bool operator==(const PayloadRates&) const = default;
};

enum class AgilityName { kHigh, kStandard, kLow, kLimited, kCustom };

std::string_view to_string(AgilityName n);
AgilityName parse_agility_name(std::string_view s);

// Piecewise-linear slew model parameters. Breakpoints are fixed at
// 10/30/60/90 degrees; below 10 degrees the minimum time applies.
struct AgilityProfile {
  AgilityName name = AgilityName::kStandard;
  std::array<double, 4> velocity_deg_s{1.5, 2.0, 2.5, 3.0};
  std::array<double, 4> offset_s{5.0, 10.0, 16.0, 22.0};

  static constexpr std::array<double, 4> kBreakpointsDeg{10.0, 30.0, 60.0, 90.0};
  static constexpr double kMinTimeS = 11.66;
  bool operator==(const AgilityProfile&) const = default;
};

struct SatelliteSpec {
  std::string id;
  OrbitalElements elements;
  AttitudeEnvelope envelope;
  ResourceCapacities capacities;
  PayloadRates rates;
  AgilityProfile agility;
  bool operator==(const SatelliteSpec&) const = default;
};

struct TaskSpec {
  std::string id;
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  int priority = 1;
  int profit = 1;
  int duration_s = 10;
  bool operator==(const TaskSpec&) const = default;
};

struct LookAngles {
  double roll_deg = 0.0;
  double pitch_deg = 0.0;
  double yaw_deg = 0.0;
  bool operator==(const LookAngles&) const = default;
};

struct AttitudeSample {
  double t_s = 0.0;
  LookAngles angles;
  bool operator==(const AttitudeSample&) const = default;
};

// Agile windows carry a sampled track; non-agile windows a single fixed roll.
struct VisibleWindow {
  std::string task_id;
  std::string satellite_id;
  double start_s = 0.0;
  double end_s = 0.0;
  std::vector<AttitudeSample> attitude_track;
  std::optional<double> fixed_roll_deg;
  bool operator==(const VisibleWindow&) const = default;
};

struct AvailableOpportunity {
  std::string task_id;
  std::string satellite_id;
  std::size_t window_index = 0;
  double start_s = 0.0;
  double end_s = 0.0;
  bool operator==(const AvailableOpportunity&) const = default;
};

enum class InstanceKind { kGenerated, kSynthetic };

struct Provenance {
  std::string scenario_id;
  std::int64_t seed = 0;
  std::string note;
  bool fallback = false;
  bool operator==(const Provenance&) const = default;
};

struct Instance {
  std::string id;
  InstanceKind kind = InstanceKind::kGenerated;
  double horizon_s = 0.0;
  Platform platform = Platform::kAgile;
  std::string epoch = kDefaultEpoch;
  double slot_step_s = 1.0;
  // When set, replaces the platform transition rule on every satellite.
  std::optional<double> fixed_transition_s;
  std::vector<SatelliteSpec> satellites;
  std::vector<TaskSpec> tasks;
  std::vector<VisibleWindow> visible_windows;
  std::vector<AvailableOpportunity> opportunities;
  Provenance provenance;
  bool operator==(const Instance&) const = default;
};

struct Assignment {
  std::string satellite_id;
  std::string task_id;
  std::size_t opportunity = 0;
  double start_s = 0.0;
  bool operator==(const Assignment&) const = default;
};

struct Schedule {
  std::string instance_id;
  std::vector<Assignment> assignments;
  std::string solver;
  double wall_time_s = 0.0;
  bool search_complete = true;
  bool operator==(const Schedule&) const = default;
};

struct Violation {
  std::string entity;
  std::string rule;
  std::string detail;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate_instance(const Instance& instance);

double orbital_period_s(const OrbitalElements& elements);
double orbital_period_s(double semi_major_axis_km);

// Wraps an angle in degrees to [0, 360).
double normalize_deg(double deg);

}  // namespace eosb
