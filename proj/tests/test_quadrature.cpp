#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "spingas/quadrature.hpp"
#include "spingas/types.hpp"
#include "test_util.hpp"

using namespace spingas;
using testutil::rel_err;

TEST_CASE("quadrature: Gauss-Legendre rules") {
  for (int n : {2, 5, 15, 31}) {
    const GlRule& r = gl_rule(n);
    REQUIRE(static_cast<int>(r.x.size()) == n);
    double wsum = 0.0;
    for (int i = 0; i < n; ++i) {
      wsum += r.w[i];
      if (i) CHECK(r.x[i] > r.x[i - 1]);
      CHECK(std::abs(r.x[i] + r.x[n - 1 - i]) < 1e-15);  // symmetric nodes
    }
    CHECK(std::abs(wsum - 2.0) < 1e-14);

    // Exact through degree 2n - 1.
    int deg = 2 * n - 1;
    double got = gl_integrate([&](double x) { return std::pow(x, deg) + x * x; },
                              -1.0, 1.0, n);
    CHECK(std::abs(got - 2.0 / 3.0) < 1e-14);
  }
}

TEST_CASE("quadrature: adaptive refinement on smooth and peaked integrands") {
  auto poly = integrate_adaptive([](double x) { return x * x; }, {0.0, 1.0}, 1e-12);
  CHECK(std::abs(poly.value - 1.0 / 3.0) < 1e-14);
  CHECK(poly.panels >= 1);

  // Narrow peak away from panel edges forces refinement.
  auto peak = integrate_adaptive(
      [](double x) { return std::exp(-500.0 * (x - 0.31) * (x - 0.31)); },
      {0.0, 1.0}, 1e-11);
  CHECK(rel_err(peak.value, std::sqrt(M_PI / 500.0)) < 1e-10);
  CHECK(peak.panels > 1);

  // Oscillatory integrand with oscillation-aware edges.
  double omega = 87.0;
  auto osc = integrate_adaptive([&](double x) { return std::sin(omega * x); },
                                oscillation_edges(0.0, 1.0, M_PI / omega), 1e-11);
  CHECK(std::abs(osc.value - (1.0 - std::cos(omega)) / omega) < 1e-13);
}

TEST_CASE("quadrature: panel budget exhaustion raises QuadratureError") {
  auto nasty = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.5) + 1e-300); };
  CHECK_THROWS_AS(integrate_adaptive(nasty, {0.0, 1.0}, 1e-14, 0.0, 8),
                  QuadratureError);
}

TEST_CASE("quadrature: fixed-panel pass is deterministic and unrefined") {
  auto f = [](double x) { return std::cos(3.0 * x); };
  auto edges = linear_edges(0.0, 2.0, 7);
  auto a = integrate_panels(f, edges);
  auto b = integrate_panels(f, edges);
  CHECK(a.value == b.value);  // bitwise: same panels, same order
  CHECK(a.panels == 7);
  CHECK(std::abs(a.value - std::sin(6.0) / 3.0) < 1e-14);
}

TEST_CASE("quadrature: edge builders") {
  auto geo = geometric_edges(0.0, 10.0, 1e-3);
  REQUIRE(geo.size() >= 3);
  CHECK(geo.front() == 0.0);
  CHECK(geo.back() == 10.0);
  for (std::size_t i = 1; i < geo.size(); ++i) CHECK(geo[i] > geo[i - 1]);

  auto lin = linear_edges(1.0, 3.0, 4);
  REQUIRE(lin.size() == 5);
  CHECK(lin[2] == doctest::Approx(2.0));

  auto osc = oscillation_edges(0.0, 1.0, 0.3);
  for (std::size_t i = 1; i < osc.size(); ++i) {
    CHECK(osc[i] - osc[i - 1] <= 0.3 + 1e-12);
    CHECK(osc[i] > osc[i - 1]);
  }

  auto merged = merge_edges({0.0, 1.0, 2.0}, {0.5, 1.0 + 1e-16, 3.0});
  for (std::size_t i = 1; i < merged.size(); ++i) CHECK(merged[i] > merged[i - 1]);
  CHECK(merged.front() == 0.0);
  CHECK(merged.back() == 3.0);
  CHECK(merged.size() == 5);  // the near-duplicate interior edge collapses

  CHECK_THROWS_AS(linear_edges(0.0, 1.0, 0), std::invalid_argument);
}
