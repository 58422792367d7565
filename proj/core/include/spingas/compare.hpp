#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spingas/model.hpp"
#include "spingas/potential.hpp"
#include "spingas/types.hpp"
#include "spingas/units.hpp"

namespace spingas {

// ---- LDL vs CM equivalence analysis ----

struct ComparisonRecord {
  double theta = 0.0;
  double gamma_ldl = 0.0;        // quadrature
  double gamma_ldl_closed = 0.0; // NaN when no closed form
  double c2_cm = 0.0;            // quadrature
  double ratio = 0.0;            // gamma_ldl / c2_cm
  double lamb_ldl_coeff = 0.0;   // nu integral U d^3r
  double lamb_cm_coeff = 0.0;    // cm_c1 quadrature
  double hh_estimate = 0.0;      // Lamb-shift relative-discrepancy scale
  double dd_estimate = 0.0;      // dissipator relative-discrepancy scale
  bool ok = true;                // false when this row's quadrature failed
  std::string error;
};

// One record per theta; a failing row is marked (ok = false, error message,
// numeric fields NaN) and the sweep continues.
std::vector<ComparisonRecord> temperature_sweep(
    const RadialPotential& pot, const SpinModel& model, double nu, double u,
    const std::vector<double>& theta_grid);

// Order-of-magnitude relative-discrepancy scales between the two generators
// (reported as scales, never as error bars), with ||F|| the spectral norm:
//   hh = max(|u| ||F|| / theta, exp(-theta)/sqrt(theta))   (Lamb shifts)
//   dd = max(|u| ||F||, 1) / theta                         (dissipators)
std::pair<double, double> discrepancy_estimates(const SpinModel& model,
                                                const GasParameters& gas);

// Least-squares constant C (through the origin, |ratio - 1| ~ C/theta) over
// the rows of a sweep; diagnostic for the 1/theta decay of the discrepancy.
double fitted_ratio_constant(const std::vector<ComparisonRecord>& records);

// Spectral norm (largest |eigenvalue|) of a Hermitian matrix.
double spectral_norm(const Matrix& hermitian);

} // namespace spingas
