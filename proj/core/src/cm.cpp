#include "spingas/cm.hpp"

#include <cmath>
#include <limits>

#include "spingas/model.hpp"
#include "spingas/quadrature.hpp"

namespace spingas {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2Pi = 2.50662827463100050242;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::vector<double> momentum_edges(double theta) {
  const double s = std::sqrt(theta);
  return geometric_edges(0.0, 12.0 * s, 0.05 * s);
}

// Edges for impact-parameter integrals: pre-refined toward b_max so that the
// square well's sqrt(1 - b^2) edge behaviour is already localized before the
// adaptive engine digs in.
std::vector<double> impact_edges(double b_max) {
  std::vector<double> edges{0.0};
  double gap = b_max;
  for (int k = 0; k < 10; ++k) {
    gap *= 0.5;
    edges.push_back(b_max - gap);
  }
  edges.push_back(b_max);
  return edges;
}

// Momentum moment integral_0^pmax p^k f(p) dp by adaptive quadrature.
double momentum_moment(const GasParameters& gas, int k) {
  return integrate_adaptive(
             [&](double p) {
               return std::pow(p, k) * maxwell_boltzmann_pdf(p, gas.theta);
             },
             momentum_edges(gas.theta), 1e-11, 0.0)
      .value;
}

// The flux-weighted averages separate exactly: J(p,b) = J1(b)/p with
// J1(b) = p J(p,b) evaluated at p = 1 (pure kinematics of straight-line
// trajectories), so
//   c1 = 8 pi^2 nu [int p^2 f dp] [int b J1 db],
//   c2 = 8 pi^2 nu [int p   f dp] [int b J1^2 db].
double impact_moment(const RadialPotential& pot, int power) {
  const double b_max = impact_cutoff(pot);
  return integrate_adaptive(
             [&](double b) {
               const double j1 = line_integral(pot, 1.0, b);
               return power == 1 ? b * j1 : b * j1 * j1;
             },
             impact_edges(b_max), 1e-11, 0.0)
      .value;
}

} // namespace

double cm_c1(const RadialPotential& pot, const GasParameters& gas) {
  validate(gas);
  return 8.0 * kPi * kPi * gas.nu * momentum_moment(gas, 2) *
         impact_moment(pot, 1);
}

double cm_c2(const RadialPotential& pot, const GasParameters& gas) {
  validate(gas);
  return 8.0 * kPi * kPi * gas.nu * momentum_moment(gas, 1) *
         impact_moment(pot, 2);
}

double cm_c2_logkernel(const RadialPotential& pot, const GasParameters& gas) {
  validate(gas);
  const double R = std::min(support_radius(pot), 8.0);
  // D = 2 int_0^R dr V(r) r int_0^r dr' V(r') r' ln((r+r')/(r-r')), edges of
  // the inner integral refined toward the integrable log endpoint at r' = r.
  const auto inner = [&](double r) {
    const double vr = evaluate(pot, r) * r;
    if (vr == 0.0 || r == 0.0) return 0.0;
    std::vector<double> edges{0.0};
    double gap = r;
    for (int k = 0; k < 24; ++k) {
      gap *= 0.5;
      edges.push_back(r - gap);
    }
    edges.push_back(r);
    const auto res = integrate_adaptive(
        [&](double rp) {
          if (rp <= 0.0 || rp >= r) return 0.0;
          return evaluate(pot, rp) * rp * std::log((r + rp) / (r - rp));
        },
        edges, 1e-9, 0.0);
    return vr * res.value;
  };
  const auto outer =
      integrate_adaptive(inner, linear_edges(0.0, R, 16), 1e-8, 0.0);
  const double d2 = 2.0 * outer.value;
  return 16.0 * kPi * kPi * gas.nu * momentum_moment(gas, 1) * d2;
}

CmCoefficients cm_coefficients(const RadialPotential& pot,
                               const GasParameters& gas) {
  CmCoefficients out;
  out.c1 = cm_c1(pot, gas);
  out.c2 = cm_c2(pot, gas);
  switch (pot.kind) {
    case PotentialKind::Gaussian:
      out.c1_closed = kSqrt2Pi * kSqrt2Pi * kSqrt2Pi * gas.nu * pot.u;
      out.c2_closed = kSqrt2Pi * kSqrt2Pi * kSqrt2Pi * gas.nu * pot.u * pot.u /
                      std::sqrt(gas.theta);
      break;
    case PotentialKind::SquareWell:
      out.c1_closed = 4.0 * kPi / 3.0 * gas.nu * pot.u;
      out.c2_closed =
          2.0 * kSqrt2Pi * gas.nu * pot.u * pot.u / std::sqrt(gas.theta);
      break;
    case PotentialKind::Tabulated:
      out.c1_closed = kNan;
      out.c2_closed = kNan;
      break;
  }
  return out;
}

RefractedCoefficients cm_refracted(const RadialPotential& pot,
                                   const GasParameters& gas, double f_expect,
                                   std::string* warning) {
  validate(gas);
  if (pot.kind != PotentialKind::SquareWell)
    throw std::invalid_argument(
        "cm_refracted: refraction is modelled for the square well only");
  const double fu = f_expect * pot.u;
  if (fu > 0.0)
    throw std::invalid_argument(
        "cm_refracted: requires <F> u <= 0 (attractive mean shift)");
  if (std::abs(fu) / gas.theta >= 0.5 && warning)
    *warning = "cm_refracted: |<F> u|/theta >= 0.5, far outside the "
               "first-order regime";
  const double delta = -fu;  // well gain, >= 0
  if (delta == 0.0) {
    return {cm_c1(pot, gas), cm_c2(pot, gas)};
  }

  // Exact impact-parameter profiles of tau = 2 sqrt((1-b^2)p^2 + 2 Delta) /
  // (p^2 + 2 Delta) (antiderivative of z sqrt(z^2 p^2 + 2 Delta),
  // z = sqrt(1 - b^2)):
  //   G1(p) = int_0^1 b tau db
  //         = 2 [(p^2+2D)^{3/2} - (2D)^{3/2}] / (3 p^2 (p^2+2D)),
  //   G2(p) = int_0^1 b tau^2 db = (p^2 + 4D) / (p^2 + 2D)^2.
  const auto g1 = [&](double p) {
    const double w = p * p + 2.0 * delta;
    const double num =
        std::pow(w, 1.5) - std::pow(2.0 * delta, 1.5);
    return 2.0 * num / (3.0 * p * p * w);
  };
  const auto g2 = [&](double p) {
    const double w = p * p + 2.0 * delta;
    return (p * p + 4.0 * delta) / (w * w);
  };

  // Fixed, Delta-independent panel decomposition (log-spaced down to
  // 1e-8 sqrt(theta)) so that finite differences in Delta see smoothly
  // cancelling quadrature error.
  const double s = std::sqrt(gas.theta);
  std::vector<double> edges{0.0};
  for (int k = 0; k <= 16; ++k)
    edges.push_back(s * std::pow(10.0, -8.0 + 0.5 * k));
  for (double m : {1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 10.0, 12.0})
    edges.push_back(s * m);
  edges = merge_edges(std::move(edges), {});

  const auto flux = [&](double p) {
    return p * p * p * maxwell_boltzmann_pdf(p, gas.theta);
  };
  const auto i1 = integrate_panels(
      [&](double p) { return p > 0.0 ? flux(p) * g1(p) : 0.0; }, edges);
  const auto i2 = integrate_panels(
      [&](double p) { return p > 0.0 ? flux(p) * g2(p) : 0.0; }, edges);
  const double pref = 8.0 * kPi * kPi * gas.nu;
  RefractedCoefficients out;
  out.c1 = pref * pot.u * i1.value;
  out.c2 = pref * pot.u * pot.u * i2.value;
  return out;
}

} // namespace spingas
