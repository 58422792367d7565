#pragma once

#include <functional>
#include <vector>

#include "spingas/types.hpp"

namespace spingas {

// ---- Gauss-Legendre rules ----

struct GlRule {
  std::vector<double> x;  // nodes on [-1, 1], ascending
  std::vector<double> w;  // weights
};

// Nodes/weights computed once per order via Newton iteration on P_n and
// cached; thread-safe.
const GlRule& gl_rule(int n);

// Single fixed-rule pass over [a, b].
double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    int n);

// ---- adaptive panel integration ----

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int panels = 0;
};

// Integrates f over the panels defined by consecutive edges.  Each panel is
// evaluated with a nested 15/31-point Gauss-Legendre pair; the 31-point value
// is kept and |GL31 - GL15| is the panel error estimate.  The worst panel is
// bisected until the total estimate meets max(rel_tol*|value|, abs_tol) or
// the panel budget runs out (then QuadratureError).  Panel selection and the
// final summation order are deterministic.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::vector<double> edges,
                                    double rel_tol, double abs_tol = 0.0,
                                    int max_panels = 20000);

// One nested 15/31 pass over the given panels, no refinement.  Used where a
// fixed decomposition is required (e.g. so that quadrature error cancels in
// finite differences).
QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  const std::vector<double>& edges);

// ---- edge builders ----

// {a, a*ratio^k ... , b} starting from a first interior edge at `first`
// (a may be 0; `first` anchors the geometric ladder).
std::vector<double> geometric_edges(double a, double b, double first,
                                    double ratio = 2.0);

std::vector<double> linear_edges(double a, double b, int n);

// Edges spaced at most half_period apart, for oscillatory integrands
// (panels no wider than half the oscillation period).
std::vector<double> oscillation_edges(double a, double b, double half_period);

// Sorted union of edge lists (duplicates within a tiny relative tolerance
// are merged).
std::vector<double> merge_edges(std::vector<double> a,
                                const std::vector<double>& b);

} // namespace spingas
