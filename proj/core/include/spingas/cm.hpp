#pragma once

#include <string>

#include "spingas/potential.hpp"
#include "spingas/types.hpp"
#include "spingas/units.hpp"

namespace spingas {

// ---- collision-model coefficients ----

// c1 = <U0 tau / t_free> (energy units) and c2 = <U0^2 tau^2 / t_free>
// (rate units), both as flux-weighted ensemble averages
//   integral db dp (8 pi^2 nu b p^3 f(p)) J(p,b)^k,  k = 1, 2,
// with J the straight-line trajectory integral.
struct CmCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
  double c1_closed = 0.0;  // NaN when no closed form (Tabulated)
  double c2_closed = 0.0;
};

CmCoefficients cm_coefficients(const RadialPotential& pot,
                               const GasParameters& gas);

// Lamb-shift weight.  Equals nu * integral U d^3r analytically for every
// spherical potential; the quadrature reproduces that to 1e-9 relative.
// Because p J(p,b) is exactly p-independent, the double quadrature separates
// into a momentum moment times a p-independent impact-parameter integral;
// the inner integral is evaluated once (identical value, far better
// conditioning than re-evaluating it per momentum node).
double cm_c1(const RadialPotential& pot, const GasParameters& gas);

// Dissipator weight, same separation with J^2.
double cm_c2(const RadialPotential& pot, const GasParameters& gas);

// Independent route for c2 via the radial double integral
//   16 pi^2 nu integral f(p) p dp
//     integral integral V(r) V(r') r r' ln((r+r')/|r-r'|) dr dr',
// with the logarithmic diagonal handled by splitting at r = r'.  Cross-check
// only; agrees with cm_c2 to 1e-6 relative.
double cm_c2_logkernel(const RadialPotential& pot, const GasParameters& gas);

// ---- refracted-trajectory correction (square well only) ----

// Inside an attractive well the particle speeds up: with well gain
// Delta = -<F> u >= 0 the effective collision time is
//   tau(p, b) = 2 sqrt((1 - b^2) p^2 + 2 Delta) / (p^2 + 2 Delta),
// and the corrected coefficients are the same flux-weighted averages with
// this tau.  The impact-parameter integral has an exact antiderivative, and
// the momentum integral runs on one fixed panel decomposition independent of
// Delta, so quadrature error cancels in finite differences of the output.
// First order in x = <F> u / theta: c1 -> c1 (1 - x), c2 -> c2 (1 + x).
//
// Preconditions: SquareWell kind; <F> u <= 0.  Warns (via *warning) when
// |<F> u| / theta >= 0.5.  Delta = 0 returns cm_c1/cm_c2 exactly.
struct RefractedCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
};

RefractedCoefficients cm_refracted(const RadialPotential& pot,
                                   const GasParameters& gas, double f_expect,
                                   std::string* warning = nullptr);

} // namespace spingas
