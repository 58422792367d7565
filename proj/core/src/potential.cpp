#include "spingas/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "spingas/quadrature.hpp"

namespace spingas {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2Pi = 2.50662827463100050242;

// ---- monotone cubic (PCHIP) interpolation ----

// Fritsch-Carlson derivative at a boundary node: one-sided three-point
// estimate, limited so the interpolant stays shape-preserving.
double pchip_edge(double h0, double h1, double d0, double d1) {
  double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (d * d0 <= 0.0)
    d = 0.0;
  else if (d0 * d1 < 0.0 && std::abs(d) > 3.0 * std::abs(d0))
    d = 3.0 * d0;
  return d;
}

std::vector<double> pchip_derivatives(const std::vector<double>& x,
                                      const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  std::vector<double> h(n - 1), slope(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    slope[k] = (y[k + 1] - y[k]) / h[k];
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (slope[k - 1] * slope[k] <= 0.0) {
      d[k] = 0.0;
    } else {
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      d[k] = (w1 + w2) / (w1 / slope[k - 1] + w2 / slope[k]);
    }
  }
  d[0] = pchip_edge(h[0], h[1], slope[0], slope[1]);
  d[n - 1] = pchip_edge(h[n - 2], h[n - 3], slope[n - 2], slope[n - 3]);
  return d;
}

// Unit-profile value (no strength factor) of a tabulated potential.
double profile_eval(const RadialPotential& pot, double r) {
  const auto& xs = pot.r;
  if (r >= xs.back()) return 0.0;
  if (r <= xs.front()) return pot.v.front();  // flat extension below the grid
  const auto it = std::upper_bound(xs.begin(), xs.end(), r);
  const std::size_t k = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double h = xs[k + 1] - xs[k];
  const double s = (r - xs[k]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return pot.v[k] * h00 + h * pot.dv[k] * h10 + pot.v[k + 1] * h01 +
         h * pot.dv[k + 1] * h11;
}

// Piece polynomial of the unit profile on [r_k, r_k + h] as a cubic in
// x = r - r_k: c0 + c1 x + c2 x^2 + c3 x^3.
struct Piece {
  double r0 = 0.0, h = 0.0;
  double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

std::vector<Piece> profile_pieces(const RadialPotential& pot) {
  std::vector<Piece> out;
  const auto& xs = pot.r;
  if (xs.front() > 0.0) {
    // constant head below the first sample
    Piece head;
    head.r0 = 0.0;
    head.h = xs.front();
    head.c0 = pot.v.front();
    out.push_back(head);
  }
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    Piece p;
    p.r0 = xs[k];
    p.h = xs[k + 1] - xs[k];
    const double delta = (pot.v[k + 1] - pot.v[k]) / p.h;
    p.c0 = pot.v[k];
    p.c1 = pot.dv[k];
    p.c2 = (3.0 * delta - 2.0 * pot.dv[k] - pot.dv[k + 1]) / p.h;
    p.c3 = (pot.dv[k] + pot.dv[k + 1] - 2.0 * delta) / (p.h * p.h);
    out.push_back(p);
  }
  return out;
}

double piece_eval(const Piece& p, double x) {
  return p.c0 + x * (p.c1 + x * (p.c2 + x * p.c3));
}

// Exact integral of q(x) sin(omega (x + r0)) over [0, h] for the quartic
// q(x) = V_piece(x) * (x + r0); stable for omega*h of order 1 and above
// (inverse powers of omega damp the by-parts chain).
double piece_sin_integral_exact(const Piece& p, double omega) {
  // quartic coefficients of q(x) = (c0 + c1 x + c2 x^2 + c3 x^3)(x + r0)
  const double q0 = p.c0 * p.r0;
  const double q1 = p.c0 + p.c1 * p.r0;
  const double q2 = p.c1 + p.c2 * p.r0;
  const double q3 = p.c2 + p.c3 * p.r0;
  const double q4 = p.c3;
  const auto antideriv = [&](double x) {
    const double q = q0 + x * (q1 + x * (q2 + x * (q3 + x * q4)));
    const double dq = q1 + x * (2.0 * q2 + x * (3.0 * q3 + x * 4.0 * q4));
    const double d2q = 2.0 * q2 + x * (6.0 * q3 + x * 12.0 * q4);
    const double d3q = 6.0 * q3 + 24.0 * q4 * x;
    const double d4q = 24.0 * q4;
    const double phase = omega * (x + p.r0);
    const double s = std::sin(phase), c = std::cos(phase);
    const double w = 1.0 / omega;
    return -q * c * w + dq * s * w * w + d2q * c * w * w * w -
           d3q * s * w * w * w * w - d4q * c * w * w * w * w * w;
  };
  return antideriv(p.h) - antideriv(0.0);
}

double tabulated_born(const RadialPotential& pot, double p, double xi) {
  const double omega = 2.0 * p * xi;
  if (omega == 0.0) return 0.0;
  const auto pieces = profile_pieces(pot);
  double total = 0.0;
  for (const Piece& pc : pieces) {
    if (omega * pc.h <= 3.0) {
      // under half an oscillation period per piece: fixed rule is exact to
      // machine precision for the cubic-times-sine integrand
      total += gl_integrate(
          [&](double r) {
            return piece_eval(pc, r - pc.r0) * r * std::sin(omega * r);
          },
          pc.r0, pc.r0 + pc.h, 15);
    } else {
      total += piece_sin_integral_exact(pc, omega);
    }
  }
  return pot.u * total;
}

double tabulated_line_integral(const RadialPotential& pot, double p, double b) {
  const double R = pot.r.back();
  if (b >= R) return 0.0;
  // r^2 = t^2 + b^2 turns (2/p) int_b^R V(r) r dr / sqrt(r^2-b^2) into
  // (2/p) int_0^T V(sqrt(t^2+b^2)) dt, T = sqrt(R^2-b^2): no endpoint
  // singularity, and panel edges at the mapped grid nodes keep every panel
  // smooth.
  const double T = std::sqrt((R - b) * (R + b));
  std::vector<double> edges{0.0};
  for (double rk : pot.r)
    if (rk > b && rk < R) edges.push_back(std::sqrt((rk - b) * (rk + b)));
  edges.push_back(T);
  edges = merge_edges(std::move(edges), {});
  const auto res = integrate_panels(
      [&](double t) { return profile_eval(pot, std::hypot(t, b)); }, edges);
  return pot.u * 2.0 / p * res.value;
}

} // namespace

RadialPotential gaussian_potential(double u) {
  RadialPotential pot;
  pot.kind = PotentialKind::Gaussian;
  pot.u = u;
  return pot;
}

RadialPotential squarewell_potential(double u) {
  RadialPotential pot;
  pot.kind = PotentialKind::SquareWell;
  pot.u = u;
  return pot;
}

RadialPotential tabulated_potential(std::vector<double> r,
                                    std::vector<double> v, double u) {
  if (r.size() != v.size())
    throw std::invalid_argument("tabulated potential: r and v sizes differ");
  if (r.size() < 2)
    throw std::invalid_argument("tabulated potential: need at least 2 samples");
  if (r.front() < 0.0)
    throw std::invalid_argument("tabulated potential: first r must be >= 0");
  for (std::size_t k = 0; k + 1 < r.size(); ++k)
    if (!(r[k + 1] > r[k]))
      throw std::invalid_argument(
          "tabulated potential: r grid must be strictly increasing");
  RadialPotential pot;
  pot.kind = PotentialKind::Tabulated;
  pot.u = u;
  pot.dv = pchip_derivatives(r, v);
  pot.r = std::move(r);
  pot.v = std::move(v);
  return pot;
}

RadialPotential tabulated_from_csv(const std::string& path, double u) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open potential table: " + path);
  std::vector<double> r, v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double rr, vv;
    if (ss >> rr >> vv) {
      r.push_back(rr);
      v.push_back(vv);
    } else if (!r.empty()) {
      throw std::invalid_argument("malformed potential table row: " + line);
    }
    // a leading non-numeric header line is skipped silently
  }
  return tabulated_potential(std::move(r), std::move(v), u);
}

double evaluate(const RadialPotential& pot, double r) {
  switch (pot.kind) {
    case PotentialKind::Gaussian:
      return pot.u * std::exp(-0.5 * r * r);
    case PotentialKind::SquareWell:
      return r <= 1.0 ? pot.u : 0.0;
    case PotentialKind::Tabulated:
      return pot.u * profile_eval(pot, r);
  }
  return 0.0;
}

double support_radius(const RadialPotential& pot) {
  switch (pot.kind) {
    case PotentialKind::Gaussian:
      return std::numeric_limits<double>::infinity();
    case PotentialKind::SquareWell:
      return 1.0;
    case PotentialKind::Tabulated:
      return pot.r.back();
  }
  return 0.0;
}

double impact_cutoff(const RadialPotential& pot) {
  switch (pot.kind) {
    case PotentialKind::Gaussian:
      return 8.0;
    case PotentialKind::SquareWell:
      return 1.0;
    case PotentialKind::Tabulated:
      return std::min(pot.r.back(), 8.0);
  }
  return 0.0;
}

double born_amplitude(const RadialPotential& pot, double p, double xi) {
  if (!(p > 0.0)) throw std::invalid_argument("born_amplitude: p must be > 0");
  if (xi < 0.0 || xi > 1.0)
    throw std::invalid_argument("born_amplitude: xi must lie in [0, 1]");
  switch (pot.kind) {
    case PotentialKind::Gaussian:
      return kSqrt2Pi * p * pot.u * xi * std::exp(-2.0 * p * p * xi * xi);
    case PotentialKind::SquareWell: {
      const double x = 2.0 * p * xi;
      if (x < 0.05) {
        // (sin x / x - cos x)/x = x/3 - x^3/30 + x^5/840 - x^7/45360 + ...
        const double x2 = x * x;
        return pot.u * x *
               (1.0 / 3.0 +
                x2 * (-1.0 / 30.0 + x2 * (1.0 / 840.0 - x2 / 45360.0)));
      }
      return pot.u / x * (std::sin(x) / x - std::cos(x));
    }
    case PotentialKind::Tabulated:
      return tabulated_born(pot, p, xi);
  }
  return 0.0;
}

double line_integral(const RadialPotential& pot, double p, double b) {
  if (!(p > 0.0)) throw std::invalid_argument("line_integral: p must be > 0");
  if (b < 0.0) throw std::invalid_argument("line_integral: b must be >= 0");
  switch (pot.kind) {
    case PotentialKind::Gaussian:
      return kSqrt2Pi * pot.u / p * std::exp(-0.5 * b * b);
    case PotentialKind::SquareWell:
      return b <= 1.0 ? 2.0 * pot.u / p * std::sqrt((1.0 - b) * (1.0 + b))
                      : 0.0;
    case PotentialKind::Tabulated:
      return tabulated_line_integral(pot, p, b);
  }
  return 0.0;
}

double volume_integral(const RadialPotential& pot) {
  switch (pot.kind) {
    case PotentialKind::Gaussian:
      return kSqrt2Pi * kSqrt2Pi * kSqrt2Pi * pot.u;  // (2 pi)^{3/2} u
    case PotentialKind::SquareWell:
      return 4.0 * kPi / 3.0 * pot.u;
    case PotentialKind::Tabulated: {
      // 4 pi int V r^2 dr; the integrand is a quintic on each piece, which a
      // 15-point rule integrates exactly
      double total = 0.0;
      for (const Piece& pc : profile_pieces(pot))
        total += gl_integrate(
            [&](double r) {
              return piece_eval(pc, r - pc.r0) * r * r;
            },
            pc.r0, pc.r0 + pc.h, 15);
      return 4.0 * kPi * pot.u * total;
    }
  }
  return 0.0;
}

} // namespace spingas
