// Attitude-transition timing between consecutive observations.
#pragma once

#include <array>

#include "eosb/core.hpp"

namespace eosb {

inline constexpr double kNonAgileTransitionS = 10.0;

// Named profiles keep the Standard offsets and only change velocities.
AgilityProfile agility_profile(AgilityName name);
// Custom velocities; offsets are recomputed so the curve is continuous,
// starting from the minimum time at the first breakpoint.
AgilityProfile custom_profile(const std::array<double, 4>& velocity_deg_s);

// Trans(dg) in seconds. Throws DomainError for negative dg.
double transition_time(double delta_g_deg, const AgilityProfile& profile);

// |d roll| + |d pitch| + |d yaw|.
double delta_g(const LookAngles& a, const LookAngles& b);

// Attitude of a window at time t: nearest track sample, or the fixed roll.
LookAngles attitude_at(const VisibleWindow& window, double t_s);

// Required gap between the end of `a` and the start of `b` (same satellite).
double min_separation(const Assignment& a, const Assignment& b, const Instance& instance);

}  // namespace eosb
