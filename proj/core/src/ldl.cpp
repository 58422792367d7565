#include "spingas/ldl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "spingas/quadrature.hpp"

namespace spingas {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2Pi = 2.50662827463100050242;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Edges for the xi-integral of B(p, xi)^2 / xi on [0, 1]: geometric ladder
// around the amplitude scale xi ~ 1/(2p) so both slow and fast momenta are
// resolved, plus half-period panels for oscillatory (non-Gaussian) kinds.
std::vector<double> xi_edges(const RadialPotential& pot, double p) {
  const double xc = std::min(0.5 / p, 0.25);
  std::vector<double> edges = geometric_edges(0.0, 1.0, xc / 16.0);
  if (pot.kind != PotentialKind::Gaussian) {
    const double reff =
        pot.kind == PotentialKind::SquareWell ? 1.0 : pot.r.back();
    const double half_period = kPi / (2.0 * p * reff);
    if (half_period < 0.5)
      edges = merge_edges(std::move(edges),
                          oscillation_edges(0.0, 1.0, half_period));
  }
  return edges;
}

// Edges for Maxwell-Boltzmann momentum integrals on [0, 12 sqrt(theta)]:
// geometric from well below both the thermal scale and the potential's own
// momentum scale (p ~ 1), so the integrand's two-scale structure is resolved
// for any theta.
std::vector<double> momentum_edges(double theta) {
  const double pmax = 12.0 * std::sqrt(theta);
  const double first = 0.005 * std::min(1.0, std::sqrt(theta));
  return geometric_edges(0.0, pmax, first);
}

// Tabulated shapes pay a full table walk per Born evaluation, so the
// (p, xi) double quadrature above would cost ~10^6 walks.  Substituting
// omega = 2 p xi turns the inner integral into a single cumulative function
// of its upper limit,
//   int_0^1 B(p, xi)^2 dxi/xi = int_0^{2p} S(w)^2 dw/w,  S(w) = B(w/2, 1),
// built once on an oscillation-resolved edge ladder and queried per
// momentum node.
double gamma_tabulated(const RadialPotential& pot, const GasParameters& gas) {
  const double omega_max = 24.0 * std::sqrt(gas.theta);
  const double reff = pot.r.back();
  const auto s2w = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double s = born_amplitude(pot, 0.5 * w, 1.0);
    return s * s / w;
  };

  // Probe the squared transform on the coarse geometric ladder to find where
  // its envelope becomes negligible; oscillation-resolving edges are only
  // needed below that cutoff.  Beyond it the integrand contributes < 1e-12
  // of the peak in envelope, so the coarse panels suffice.
  std::vector<double> coarse = geometric_edges(0.0, omega_max, 1e-3 / reff);
  std::vector<double> probe(coarse.size(), 0.0);
  double peak = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    probe[i] = s2w(coarse[i]) * coarse[i];  // ~ S(w)^2 envelope sample
    peak = std::max(peak, probe[i]);
  }
  double omega_cut = omega_max;
  for (std::size_t i = coarse.size(); i-- > 1;) {
    if (probe[i] >= 1e-12 * peak) {
      omega_cut = std::min(omega_max, 4.0 * coarse[i]);
      break;
    }
  }
  std::vector<double> edges =
      merge_edges(std::move(coarse),
                  oscillation_edges(0.0, omega_cut, kPi / (2.0 * reff)));

  // Prefix integrals of S^2/w at the edges.  Every panel spans at most half
  // an oscillation period (or lies past the cutoff), so a fixed 15-point
  // rule is converged.
  std::vector<double> prefix(edges.size(), 0.0);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    prefix[i + 1] = prefix[i] + gl_integrate(s2w, edges[i], edges[i + 1], 15);
  const auto cumulative = [&](double w) {
    if (w <= 0.0) return 0.0;
    if (w >= edges.back()) return prefix.back();
    const std::size_t k = static_cast<std::size_t>(
        std::upper_bound(edges.begin(), edges.end(), w) - edges.begin()) - 1;
    return prefix[k] + gl_integrate(s2w, edges[k], w, 15);
  };

  const auto outer = integrate_adaptive(
      [&](double p) {
        if (p <= 0.0) return 0.0;
        return maxwell_boltzmann_pdf(p, gas.theta) * p * cumulative(2.0 * p);
      },
      momentum_edges(gas.theta), 1e-9, 0.0);
  const double gamma = 32.0 * kPi * kPi * gas.nu * outer.value;
  if (gamma < 0.0)
    throw NumericalError("gamma_quadrature: negative rate (internal error)");
  return gamma;
}

} // namespace

double gamma_quadrature(const RadialPotential& pot, const GasParameters& gas) {
  validate(gas);
  if (pot.kind == PotentialKind::Tabulated) return gamma_tabulated(pot, gas);
  const auto inner = [&](double p) {
    const auto res = integrate_adaptive(
        [&](double xi) {
          const double b = born_amplitude(pot, p, xi);
          return xi > 0.0 ? b * b / xi : 0.0;
        },
        xi_edges(pot, p), 1e-10, 0.0);
    return res.value;
  };
  const auto outer = integrate_adaptive(
      [&](double p) {
        if (p <= 0.0) return 0.0;
        return maxwell_boltzmann_pdf(p, gas.theta) * p * inner(p);
      },
      momentum_edges(gas.theta), 1e-9, 0.0);
  const double gamma = 32.0 * kPi * kPi * gas.nu * outer.value;
  if (gamma < 0.0)
    throw NumericalError("gamma_quadrature: negative rate (internal error)");
  return gamma;
}

double gamma_squarewell_interpolated(const GasParameters& gas) {
  validate(gas);
  return 2.0 * kSqrt2Pi * gas.nu * gas.u * gas.u / std::sqrt(gas.theta) *
         (1.0 - 9.0 / (16.0 * gas.theta));
}

double squarewell_xi_bracket(double p) {
  if (!(p > 0.0))
    throw std::invalid_argument("squarewell_xi_bracket: p must be > 0");
  if (p < 0.25) {
    // Series of [-1 + cos 4p + 4p sin 4p + 32p^4 - 8p^2] / (128 p^4): the
    // j = 1, 2 terms of the cosine/sine series cancel the polynomial part
    // exactly, so start at j = 3 -- no cancellation for small p.
    double sum = 0.0;
    double pw = std::pow(4.0 * p, 6.0);  // (4p)^{2j} at j = 3
    double fact = 720.0;                 // (2j)! at j = 3
    for (int j = 3; j < 40; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      const double term = sign * (1.0 - 2.0 * j) * pw / fact;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      pw *= 16.0 * p * p;
      fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    return sum / (128.0 * p * p * p * p);
  }
  const double p2 = p * p, p4 = p2 * p2;
  return (32.0 * p4 - 8.0 * p2 - 1.0 + std::cos(4.0 * p) +
          4.0 * p * std::sin(4.0 * p)) /
         (128.0 * p4);
}

double squarewell_xi_bracket_interp(double p) {
  return 0.25 * (-std::expm1(-8.0 * p * p / 9.0));
}

InterpolationScan scan_squarewell_interpolation(double q_lo, double q_hi) {
  if (!(q_hi > q_lo && q_lo > 0.0))
    throw std::invalid_argument("interpolation scan: need 0 < q_lo < q_hi");
  const auto rel_err = [](double q) {
    const double p = 0.5 * q;
    const double exact = squarewell_xi_bracket(p);
    const double approx = squarewell_xi_bracket_interp(p);
    return std::abs(exact - approx) / approx;
  };
  // dense scan, then golden-section refinement of the bracketed maximum
  const int n = 4000;
  double best_q = q_lo, best = rel_err(q_lo);
  for (int i = 1; i <= n; ++i) {
    const double q = q_lo + (q_hi - q_lo) * i / n;
    const double e = rel_err(q);
    if (e > best) {
      best = e;
      best_q = q;
    }
  }
  double a = std::max(q_lo, best_q - 2.0 * (q_hi - q_lo) / n);
  double b = std::min(q_hi, best_q + 2.0 * (q_hi - q_lo) / n);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = rel_err(x1), f2 = rel_err(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = rel_err(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = rel_err(x1);
    }
  }
  InterpolationScan scan;
  scan.q_at_max = 0.5 * (a + b);
  scan.max_rel_error = rel_err(scan.q_at_max);
  return scan;
}

Matrix lamb_shift_ldl(const SpinModel& model, const RadialPotential& pot,
                      const GasParameters& gas, int order,
                      std::string* warning) {
  validate(model);
  validate(gas);
  if (order != 1 && order != 2)
    throw std::invalid_argument("lamb_shift_ldl: order must be 1 or 2");
  const auto a = jump_operators(model);
  const int ds = model.dim_s, dg = model.dim_g;
  Matrix weighted = Matrix::Zero(ds, ds);
  for (int i = 0; i < dg; ++i)
    weighted += model.mu[i] * a[static_cast<std::size_t>(i) * dg + i];

  if (order == 1) return gas.nu * volume_integral(pot) * weighted;

  if (pot.kind != PotentialKind::SquareWell)
    throw std::invalid_argument(
        "lamb_shift_ldl: order 2 is supported for the square well only");
  if (gas.theta < 10.0 && warning)
    *warning = "order-2 Lamb shift requested at theta < 10; the expansion "
               "behind it assumes fast particles";
  // second-order term uses the diagonal internal blocks of F^2
  const Matrix f2 = model.f * model.f;
  Matrix corr = Matrix::Zero(ds, ds);
  for (int i = 0; i < dg; ++i) {
    Matrix block(ds, ds);
    for (int k = 0; k < ds; ++k)
      for (int l = 0; l < ds; ++l) block(k, l) = f2(k * dg + i, l * dg + i);
    corr += model.mu[i] * block;
  }
  return 4.0 * kPi / 3.0 * gas.nu * pot.u *
         (weighted - 2.0 * pot.u / gas.theta * corr);
}

double kernel_K(double p, double r, double r_prime) {
  if (!(p > 0.0)) throw std::invalid_argument("kernel_K: p must be > 0");
  if (!(r > 0.0) || !(r_prime > 0.0))
    throw std::invalid_argument("kernel_K: r and r' must be > 0");
  if (r == r_prime)
    throw std::invalid_argument(
        "kernel_K: r = r' rejected (logarithmic singularity of the limit)");
  // sin(2pr xi) sin(2pr' xi)/xi = [cos(a xi) - cos(c xi)]/(2 xi) with
  // a = 2p|r - r'|, c = 2p(r + r'); regular at xi -> 0 where it tends to 0
  // like (c^2 - a^2) xi / 4.
  const double aa = 2.0 * p * std::abs(r - r_prime);
  const double cc = 2.0 * p * (r + r_prime);
  const auto f = [&](double xi) {
    if (cc * xi < 1e-4) {
      const double x2 = xi * xi;
      return (cc * cc - aa * aa) * xi / 4.0 -
             (cc * cc * cc * cc - aa * aa * aa * aa) * x2 * xi / 48.0;
    }
    return (std::cos(aa * xi) - std::cos(cc * xi)) / (2.0 * xi);
  };
  std::vector<double> edges =
      merge_edges(geometric_edges(0.0, 1.0, std::min(0.25, 1.0 / cc)),
                  oscillation_edges(0.0, 1.0, kPi / (2.0 * cc)));
  return integrate_adaptive(f, edges, 1e-10, 1e-13).value;
}

double ldl_error_scale(const GasParameters& gas) {
  return std::exp(-gas.theta) / std::sqrt(gas.theta);
}

LdlCoefficients ldl_coefficients(const RadialPotential& pot,
                                 const GasParameters& gas) {
  LdlCoefficients out;
  out.gamma = gamma_quadrature(pot, gas);
  out.lamb_coeff = gas.nu * volume_integral(pot);
  switch (pot.kind) {
    case PotentialKind::Gaussian:
      out.correction_factor = 1.0 / (1.0 + 1.0 / (8.0 * gas.theta));
      out.gamma_closed = kSqrt2Pi * kSqrt2Pi * kSqrt2Pi * gas.nu * pot.u *
                         pot.u / std::sqrt(gas.theta) * out.correction_factor;
      break;
    case PotentialKind::SquareWell:
      out.correction_factor = 1.0 - 9.0 / (16.0 * gas.theta);
      out.gamma_closed = 2.0 * kSqrt2Pi * gas.nu * pot.u * pot.u /
                         std::sqrt(gas.theta) * out.correction_factor;
      break;
    case PotentialKind::Tabulated:
      out.gamma_closed = kNan;
      out.correction_factor = kNan;
      break;
  }
  return out;
}

} // namespace spingas
