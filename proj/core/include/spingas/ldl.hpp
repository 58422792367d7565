#pragma once

#include <string>

#include "spingas/model.hpp"
#include "spingas/potential.hpp"
#include "spingas/types.hpp"
#include "spingas/units.hpp"

namespace spingas {

// ---- low-density-limit generator coefficients ----

struct LdlCoefficients {
  double gamma = 0.0;        // dissipator rate, units hbar/(m d^2)
  double lamb_coeff = 0.0;   // nu * integral U d^3r, multiplies sum mu_i A_ii
  double gamma_closed = 0.0; // NaN when no closed form (Tabulated)
  double correction_factor = 0.0; // finite-theta factor of the closed form; NaN when n/a
};

LdlCoefficients ldl_coefficients(const RadialPotential& pot,
                                 const GasParameters& gas);

// Gamma = 32 pi^2 nu  integral_0^inf f(p) p dp  integral_0^1 (dxi/xi) B(p,xi)^2,
// evaluated by nested adaptive quadrature (relative error <= 1e-7; the
// xi -> 0 endpoint is regular because B ~ xi).  Momentum integral truncated
// at 12 sqrt(theta) (Maxwell-Boltzmann tail < 1e-12 of the mass).
double gamma_quadrature(const RadialPotential& pot, const GasParameters& gas);

// Square-well closed form with the finite-temperature interpolation factor:
// 2 sqrt(2 pi) nu u^2 / sqrt(theta) * (1 - 9/(16 theta)).
double gamma_squarewell_interpolated(const GasParameters& gas);

// Exact square-well xi-integral integral_0^1 (dxi/xi) B^2 / u^2 =
// [32 p^4 - 8 p^2 - 1 + cos 4p + 4p sin 4p] / (128 p^4); evaluated by a
// cancellation-free series for small p.  Limits: 2p^2/9 (p << 1), 1/4
// (p >> 1).
double squarewell_xi_bracket(double p);

// The interpolation of the same integral: (1/4)(1 - exp(-8 p^2 / 9)).
double squarewell_xi_bracket_interp(double p);

// Maximum relative deviation of the interpolation from the exact bracket,
// scanned over the backscattering momentum transfer q = 2p (the bracket's
// natural oscillation variable: its trig terms are cos(2q), q sin(2q)).
// Deviation is normalized by the interpolation value.
struct InterpolationScan {
  double q_at_max = 0.0;     // location of the worst deviation, in q = 2p
  double max_rel_error = 0.0;
};
InterpolationScan scan_squarewell_interpolation(double q_lo = 0.1,
                                                double q_hi = 20.0);

// Lamb-shift Hermitian matrix.
//   order 1: (nu integral U d^3r) * sum_i mu_i A_ii, any potential kind.
//   order 2: SquareWell only, (4 pi/3) nu u * sum_i mu_i (A_ii -
//            (2u/theta) <i|F^2|i>); warns (does not reject) when theta < 10.
// Throws std::invalid_argument for order 2 with a non-SquareWell potential.
Matrix lamb_shift_ldl(const SpinModel& model, const RadialPotential& pot,
                      const GasParameters& gas, int order,
                      std::string* warning = nullptr);

// K(p, r, r') = integral_0^1 (dxi/xi) sin(2 p r xi) sin(2 p r' xi), by
// quadrature (the xi -> 0 limit is regular).  Converges to
// (1/2) ln((r+r')/|r-r'|) as p grows.  r = r' is rejected (logarithmic
// singularity of the limit kernel).
double kernel_K(double p, double r, double r_prime);

// Exponentially small error scale exp(-theta)/sqrt(theta) of the
// fast-particle expansion; reported as a diagnostic, never added to results.
double ldl_error_scale(const GasParameters& gas);

} // namespace spingas
