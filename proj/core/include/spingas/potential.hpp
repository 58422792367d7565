#pragma once

#include <string>
#include <vector>

#include "spingas/types.hpp"

namespace spingas {

// ---- radial potentials ----

enum class PotentialKind { Gaussian, SquareWell, Tabulated };

// Spherically symmetric V(r) with range d = 1:
//   Gaussian:   V(r) = u * exp(-r^2/2)
//   SquareWell: V(r) = u for r <= 1, else 0
//   Tabulated:  V(r) = u * profile(r), where profile is the monotone-cubic
//               (PCHIP) interpolant of the (r, v) samples; V = 0 beyond the
//               last sample, and the first sample's value extends to r = 0
//               when the grid starts above 0.
// The strength u multiplies the shape for every kind, so both integral
// primitives below are exactly linear in u.
struct RadialPotential {
  PotentialKind kind = PotentialKind::Gaussian;
  double u = 0.0;
  // Tabulated data: nodes, unit-profile values, PCHIP node derivatives.
  std::vector<double> r;
  std::vector<double> v;
  std::vector<double> dv;
};

RadialPotential gaussian_potential(double u);
RadialPotential squarewell_potential(double u);
// r strictly increasing, first r >= 0; u scales the tabulated profile.
RadialPotential tabulated_potential(std::vector<double> r,
                                    std::vector<double> v, double u = 1.0);
// Two-column CSV (r, v); '#' comment lines and a non-numeric header allowed.
RadialPotential tabulated_from_csv(const std::string& path, double u = 1.0);

// V(r) including the strength factor.
double evaluate(const RadialPotential& pot, double r);

// Radius beyond which V is treated as 0: 1 (SquareWell), last grid point
// (Tabulated), +inf (Gaussian).
double support_radius(const RadialPotential& pot);

// Impact-parameter cutoff b_max shared by the collision-model quadratures and
// the stochastic simulator: exact support for SquareWell (1) and Tabulated
// (min(last grid point, 8)); 8 for the non-compact Gaussian, where the
// trajectory integral has fallen below 1e-13 of its peak.
double impact_cutoff(const RadialPotential& pot);

// ---- integral primitives ----

// On-shell Born integral B(p, xi) = integral_0^inf V(r) sin(2 p r xi) r dr,
// xi in [0, 1].  Closed forms for Gaussian/SquareWell; per-piece integration
// (exact integration by parts against the oscillation for wide phase, nested
// Gauss-Legendre otherwise) for Tabulated, with panels never wider than half
// the sine period.
double born_amplitude(const RadialPotential& pot, double p, double xi);

// Straight-line trajectory integral
// J(p, b) = integral_-inf^inf V(sqrt(b^2 + p^2 t^2)) dt
//         = (2/p) integral_b^inf V(r) r dr / sqrt(r^2 - b^2).
// p J(p, b) is exactly p-independent (substitution s = p t); closed forms for
// Gaussian/SquareWell, and for Tabulated the substitution r^2 = t^2 + b^2
// removes the endpoint singularity, leaving a smooth per-piece integrand.
double line_integral(const RadialPotential& pot, double p, double b);

// integral V(r) d^3 r = 4 pi integral_0^inf V(r) r^2 dr; closed forms for the
// analytic kinds, exact per-piece Gauss-Legendre for Tabulated.
double volume_integral(const RadialPotential& pot);

} // namespace spingas
