#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "spingas/cm.hpp"
#include "test_util.hpp"

using namespace spingas;
using testutil::rel_err;

namespace {

RadialPotential tabulated_gaussian(double u) {
  std::vector<double> r(1500), v(1500);
  for (int i = 0; i < 1500; ++i) {
    r[i] = 8.0 * i / 1499.0;
    v[i] = std::exp(-0.5 * r[i] * r[i]);
  }
  return tabulated_potential(r, v, u);
}

}  // namespace

TEST_CASE("cm: Lamb-shift weight c1") {
  GasParameters gas{0.01, 100.0, 0.1};
  CHECK(rel_err(cm_c1(gaussian_potential(gas.u), gas), 1.5749609945722422e-2) < 1e-12);
  CHECK(rel_err(cm_c1(squarewell_potential(gas.u), gas), 4.1887902047863905e-3) < 1e-12);
  CHECK(cm_c1(gaussian_potential(0.0), gas) == 0.0);

  // c1 equals nu * volume integral for every kind and any temperature.
  for (double theta : {0.5, 3.0, 20.0, 400.0, 9000.0}) {
    GasParameters g{0.04, theta, -0.2};
    for (auto pot : {gaussian_potential(g.u), squarewell_potential(g.u),
                     tabulated_gaussian(g.u)}) {
      CHECK(rel_err(cm_c1(pot, g), g.nu * volume_integral(pot)) < 1e-9);
    }
  }

  // Sign follows the strength.
  CHECK(cm_c1(squarewell_potential(-0.1), gas) < 0.0);
  CHECK(rel_err(cm_c1(squarewell_potential(-0.1), gas),
                -cm_c1(squarewell_potential(0.1), gas)) < 1e-14);
}

TEST_CASE("cm: dissipator weight c2") {
  GasParameters gas{0.01, 100.0, 0.1};
  double c2w = cm_c2(squarewell_potential(gas.u), gas);
  CHECK(rel_err(c2w, 5.0132565492620003e-5) < 1e-9);  // 2 sqrt(2 pi) nu u^2/sqrt(theta)
  CHECK(rel_err(c2w, 2.0 * std::sqrt(2.0 * M_PI) * gas.nu * gas.u * gas.u /
                         std::sqrt(gas.theta)) < 1e-9);

  double c2g = cm_c2(gaussian_potential(gas.u), gas);
  CHECK(rel_err(c2g, std::pow(2.0 * M_PI, 1.5) * gas.nu * gas.u * gas.u /
                         std::sqrt(gas.theta)) < 1e-9);

  // Sign-independent in u, and the closed nu u^2/sqrt(theta) scaling holds
  // across a temperature grid.
  CHECK(rel_err(cm_c2(squarewell_potential(-gas.u), gas), c2w) < 1e-14);
  for (double theta : {1.0, 10.0, 1000.0}) {
    GasParameters g{gas.nu, theta, gas.u};
    CHECK(rel_err(cm_c2(squarewell_potential(g.u), g),
                  c2w * std::sqrt(gas.theta / theta)) < 1e-9);
    CHECK(rel_err(cm_c2(gaussian_potential(g.u), g),
                  c2g * std::sqrt(gas.theta / theta)) < 1e-9);
  }
}

TEST_CASE("cm: coefficient bundle and closed forms") {
  GasParameters gas{0.01, 100.0, 0.1};
  auto c = cm_coefficients(squarewell_potential(gas.u), gas);
  CHECK(c.c2 >= 0.0);
  CHECK(rel_err(c.c1, c.c1_closed) < 1e-12);
  CHECK(rel_err(c.c2, c.c2_closed) < 1e-9);

  auto ct = cm_coefficients(tabulated_gaussian(gas.u), gas);
  CHECK(std::isnan(ct.c1_closed));
  CHECK(std::isnan(ct.c2_closed));
  CHECK(ct.c2 > 0.0);
}

TEST_CASE("cm: log-kernel route agrees with the flux route") {
  GasParameters gas{0.01, 10.0, 0.1};
  for (auto pot : {gaussian_potential(gas.u), squarewell_potential(gas.u)}) {
    CHECK(rel_err(cm_c2_logkernel(pot, gas), cm_c2(pot, gas)) < 1e-6);
  }
  // Quadratic in u.
  double base = cm_c2_logkernel(squarewell_potential(0.1), gas);
  CHECK(rel_err(cm_c2_logkernel(squarewell_potential(0.2), gas), 4.0 * base) < 1e-12);

  // Tabulated shape, same route agreement at a looser interpolation floor.
  CHECK(rel_err(cm_c2_logkernel(tabulated_gaussian(gas.u), gas),
                cm_c2(tabulated_gaussian(gas.u), gas)) < 1e-5);
}

TEST_CASE("cm: refracted coefficients") {
  GasParameters gas{0.01, 100.0, 0.1};
  auto w = squarewell_potential(gas.u);

  // No refraction: exact reduction to the straight-line coefficients.
  auto r0 = cm_refracted(w, gas, 0.0);
  CHECK(r0.c1 == cm_c1(w, gas));
  CHECK(r0.c2 == cm_c2(w, gas));

  // Frozen cross-check at well gain Delta = -<F> u = 1.
  auto r1 = cm_refracted(w, gas, -10.0);
  CHECK(rel_err(r1.c1, 4.208447315e-3) < 1e-8);
  CHECK(rel_err(r1.c2, 4.965168646e-5) < 1e-8);

  // Exact identity for the dissipator weight:
  //   c2(Delta)/c2 = 1 - eps + eps^2 e^eps E1(eps),  eps = Delta/theta.
  for (double delta : {1.0, 30.0}) {
    double eps = delta / gas.theta;
    auto r = cm_refracted(w, gas, -delta / gas.u);
    double e1 = -std::expint(-eps);
    double want = 1.0 - eps + eps * eps * std::exp(eps) * e1;
    CHECK(rel_err(r.c2 / cm_c2(w, gas), want) < 1e-7);
  }

  // First-order slopes in x = <F> u / theta: c1 -> c1 (1 - x), c2 -> c2 (1 + x).
  double eps = 1e-8;  // one-sided, x = -eps (the precondition forces <F> u <= 0)
  auto r = cm_refracted(w, gas, -eps * gas.theta / gas.u);
  double slope_c1 = (r.c1 - r0.c1) / (eps * r0.c1);
  double slope_c2 = (r.c2 - r0.c2) / (eps * r0.c2);
  CHECK(std::abs(slope_c1 - 1.0) < 0.02);   // 0.99791: sqrt(eps) E1 subleading term
  CHECK(std::abs(slope_c2 + 1.0) < 0.02);   // -0.9999998

  // Preconditions and the large-correction warning.
  CHECK_THROWS_AS(cm_refracted(gaussian_potential(gas.u), gas, -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(cm_refracted(w, gas, 5.0), std::invalid_argument);  // <F> u > 0
  std::string warning;
  cm_refracted(w, gas, -0.6 * gas.theta / gas.u, &warning);
  CHECK(!warning.empty());
  warning.clear();
  cm_refracted(w, gas, -10.0, &warning);
  CHECK(warning.empty());
}
