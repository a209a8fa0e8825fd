// Precomputed two-body orbit for repeated evaluation.
#pragma once

#include "eosb/astro.hpp"

namespace eosb::detail {

class Orbit {
 public:
  explicit Orbit(const OrbitalElements& el);
  SatState at(double t_s) const;
  double period_s() const { return period_; }

 private:
  double a_, e_, n_, m0_, p_, period_, theta0_;
  // Perifocal-to-inertial rotation, columns P and Q.
  Vec3 P_, Q_;
};

}  // namespace eosb::detail
