#include <cmath>
#include <cstdio>
#include <string>

#include "orbit.hpp"

namespace eosb {

double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

Vec3 unit(Vec3 a) {
  const double n = norm(a);
  return n > 0 ? (1.0 / n) * a : a;
}

namespace {

constexpr double kDeg = kPi / 180.0;

// Days since 1970-01-01 for a proleptic Gregorian date.
long days_from_civil(long y, unsigned m, unsigned d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

}  // namespace

double parse_epoch_unix_s(std::string_view iso) {
  int y, mo, d, h, mi;
  double s;
  const std::string str(iso);
  if (std::sscanf(str.c_str(), "%d-%d-%dT%d:%d:%lfZ", &y, &mo, &d, &h, &mi, &s) != 6 ||
      str.empty() || str.back() != 'Z' || mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 ||
      h > 23 || mi < 0 || mi > 59 || s < 0 || s >= 61) {
    throw DomainError("bad UTC epoch '" + str + "'");
  }
  return static_cast<double>(days_from_civil(y, static_cast<unsigned>(mo),
                                             static_cast<unsigned>(d))) *
             86400.0 +
         h * 3600.0 + mi * 60.0 + s;
}

std::string format_epoch(double unix_s) {
  const long whole = static_cast<long>(std::floor(unix_s));
  long days = whole / 86400;
  long rem = whole % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  // Inverse of days_from_civil.
  const long z = days + 719468;
  const long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  long y = static_cast<long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  y += m <= 2;
  const double frac = unix_s - static_cast<double>(whole);
  char buf[64];
  if (frac > 1e-9) {
    std::snprintf(buf, sizeof buf, "%04ld-%02u-%02uT%02ld:%02ld:%06.3fZ", y, m, d, rem / 3600,
                  (rem / 60) % 60, static_cast<double>(rem % 60) + frac);
  } else {
    std::snprintf(buf, sizeof buf, "%04ld-%02u-%02uT%02ld:%02ld:%02ldZ", y, m, d, rem / 3600,
                  (rem / 60) % 60, rem % 60);
  }
  return buf;
}

double gmst_rad(std::string_view iso) {
  const double jd = parse_epoch_unix_s(iso) / 86400.0 + 2440587.5;
  const double du = jd - 2451545.0;
  const double t = du / 36525.0;
  const double deg =
      280.46061837 + 360.98564736629 * du + 0.000387933 * t * t - t * t * t / 38710000.0;
  return normalize_deg(deg) * kDeg;
}

double solve_kepler(double m, double e) {
  double ecc_anom = e < 0.8 ? m : kPi;
  for (int it = 0; it < 100; ++it) {
    const double f = ecc_anom - e * std::sin(ecc_anom) - m;
    const double step = f / (1.0 - e * std::cos(ecc_anom));
    ecc_anom -= step;
    if (std::abs(step) < kKeplerToleranceRad) break;
  }
  return ecc_anom;
}

double true_to_mean_anomaly(double nu, double e) {
  const double ecc_anom = 2.0 * std::atan2(std::sqrt(1.0 - e) * std::sin(nu / 2.0),
                                           std::sqrt(1.0 + e) * std::cos(nu / 2.0));
  return ecc_anom - e * std::sin(ecc_anom);
}

double mean_to_true_anomaly(double m, double e) {
  const double ecc_anom = solve_kepler(m, e);
  return 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(ecc_anom / 2.0),
                          std::sqrt(1.0 - e) * std::cos(ecc_anom / 2.0));
}

namespace detail {

Orbit::Orbit(const OrbitalElements& el)
    : a_(el.semi_major_axis_km), e_(el.eccentricity) {
  n_ = std::sqrt(kEarthMuKm3S2 / (a_ * a_ * a_));
  period_ = 2.0 * kPi / n_;
  p_ = a_ * (1.0 - e_ * e_);
  const double nu0 = el.true_anomaly_deg * kDeg;
  const double e0 =
      2.0 * std::atan2(std::sqrt(1.0 - e_) * std::sin(nu0 / 2), std::sqrt(1.0 + e_) * std::cos(nu0 / 2));
  m0_ = e0 - e_ * std::sin(e0);
  const double raan = el.raan_deg * kDeg, inc = el.inclination_deg * kDeg,
               argp = el.arg_perigee_deg * kDeg;
  const double cO = std::cos(raan), sO = std::sin(raan), ci = std::cos(inc), si = std::sin(inc),
               cw = std::cos(argp), sw = std::sin(argp);
  P_ = {cO * cw - sO * sw * ci, sO * cw + cO * sw * ci, sw * si};
  Q_ = {-cO * sw - sO * cw * ci, -sO * sw + cO * cw * ci, cw * si};
  theta0_ = gmst_rad(el.epoch);
}

SatState Orbit::at(double t) const {
  const double m = std::fmod(m0_ + n_ * t, 2.0 * kPi);
  const double ea = solve_kepler(m, e_);
  const double nu = 2.0 * std::atan2(std::sqrt(1.0 + e_) * std::sin(ea / 2),
                                     std::sqrt(1.0 - e_) * std::cos(ea / 2));
  const double r = a_ * (1.0 - e_ * std::cos(ea));
  const double vf = std::sqrt(kEarthMuKm3S2 / p_);
  SatState s;
  s.position_km = (r * std::cos(nu)) * P_ + (r * std::sin(nu)) * Q_;
  s.velocity_km_s = (-vf * std::sin(nu)) * P_ + (vf * (e_ + std::cos(nu))) * Q_;
  s.time_s = t;
  s.earth_angle_rad = theta0_ + kEarthRotationRadS * t;
  return s;
}

}  // namespace detail

SatState propagate(const OrbitalElements& elements, double t_s) {
  return detail::Orbit(elements).at(t_s);
}

double specific_energy(const SatState& s) {
  const double v = norm(s.velocity_km_s);
  return 0.5 * v * v - kEarthMuKm3S2 / norm(s.position_km);
}

}  // namespace eosb
