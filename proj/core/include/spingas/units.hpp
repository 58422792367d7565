#pragma once

#include <cmath>
#include <stdexcept>

namespace spingas {

// Internal convention: hbar = m = d = 1, where m is the gas-particle mass and
// d the potential range.  Derived scales: time m d^2/hbar, energy
// hbar^2/(m d^2), momentum hbar/d, rate hbar/(m d^2).  UnitSystem converts
// between user units (hbar, mass, range in any consistent system) and the
// dimensionless groups used everywhere else; all helpers are pure inverses
// of each other.
struct UnitSystem {
  double hbar = 1.0;
  double mass = 1.0;
  double range = 1.0;

  double energy_scale() const { return hbar * hbar / (mass * range * range); }
  double time_scale() const { return mass * range * range / hbar; }
  double momentum_scale() const { return hbar / range; }
  double rate_scale() const { return 1.0 / time_scale(); }

  // dimensionless groups from raw inputs
  double theta_from_temperature(double kT) const { return kT / energy_scale(); }
  double u_from_strength(double U0) const { return U0 / energy_scale(); }
  double nu_from_density(double n) const { return n * range * range * range; }

  // inverse conversions
  double temperature_from_theta(double theta) const { return theta * energy_scale(); }
  double strength_from_u(double u) const { return u * energy_scale(); }
  double density_from_nu(double nu) const { return nu / (range * range * range); }
};

// ---- gas parameters ----

// nu = n d^3 (dimensionless density), theta = kT m d^2 / hbar^2
// (dimensionless temperature), u = U0 m d^2 / hbar^2 (dimensionless
// interaction strength, any sign).
struct GasParameters {
  double nu = 0.0;
  double theta = 0.0;
  double u = 0.0;

  // Validity-regime diagnostics, exposed as ratios (small means valid),
  // never as booleans.
  double dilute_ratio() const { return nu; }                          // << 1: rare collisions
  double fast_ratio() const { return 1.0 / theta; }                   // << 1: fast particles
  double born_ratio() const { return std::abs(u) / std::sqrt(theta); } // << 1: Born/stroboscopic
};

inline void validate(const GasParameters& gas) {
  if (!(gas.nu > 0.0)) throw std::invalid_argument("gas: nu must be > 0");
  if (!(gas.theta > 0.0)) throw std::invalid_argument("gas: theta must be > 0");
  if (!std::isfinite(gas.u)) throw std::invalid_argument("gas: u must be finite");
}

} // namespace spingas
