#include <cmath>
#include <string>

#include "eosb/core.hpp"

namespace eosb {

std::string_view to_string(Platform p) { return p == Platform::kAgile ? "agile" : "non_agile"; }

Platform parse_platform(std::string_view s) {
  if (s == "agile" || s == "Agile") return Platform::kAgile;
  if (s == "non_agile" || s == "nonagile" || s == "non-agile" || s == "NonAgile") {
    return Platform::kNonAgile;
  }
  throw DomainError("unknown platform '" + std::string(s) + "'");
}

std::string_view to_string(AgilityName n) {
  switch (n) {
    case AgilityName::kHigh: return "high";
    case AgilityName::kStandard: return "standard";
    case AgilityName::kLow: return "low";
    case AgilityName::kLimited: return "limited";
    case AgilityName::kCustom: return "custom";
  }
  return "standard";
}

AgilityName parse_agility_name(std::string_view s) {
  for (AgilityName n : {AgilityName::kHigh, AgilityName::kStandard, AgilityName::kLow,
                        AgilityName::kLimited, AgilityName::kCustom}) {
    if (to_string(n) == s) return n;
  }
  throw DomainError("unknown agility profile '" + std::string(s) + "'");
}

double orbital_period_s(double semi_major_axis_km) {
  return 2.0 * kPi * std::sqrt(std::pow(semi_major_axis_km, 3) / kEarthMuKm3S2);
}

double orbital_period_s(const OrbitalElements& elements) {
  return orbital_period_s(elements.semi_major_axis_km);
}

double normalize_deg(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0) r += 360.0;
  if (r >= 360.0) r -= 360.0;
  return r;
}

}  // namespace eosb
