#include "spingas/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace spingas {

namespace {

GlRule make_gl(int n) {
  GlRule rule;
  rule.x.assign(n, 0.0);
  rule.w.assign(n, 0.0);
  for (int k = 0; k < (n + 1) / 2; ++k) {
    // Newton iteration on P_n from the Tricomi initial guess.
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double dpn = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dpn = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = -p1 / dpn;
      x += dx;
      if (std::abs(dx) < 1e-15) {
        // one polishing pass keeps the weight formula consistent
        p0 = 1.0;
        p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dpn = n * (x * p1 - p0) / (x * x - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dpn * dpn);
    rule.x[k] = -x;
    rule.w[k] = w;
    rule.x[n - 1 - k] = x;
    rule.w[n - 1 - k] = w;
  }
  return rule;
}

struct Panel {
  double a = 0.0, b = 0.0;
  double value = 0.0;   // 31-point result
  double error = 0.0;   // |GL31 - GL15|
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
  const GlRule& lo = gl_rule(15);
  const GlRule& hi = gl_rule(31);
  const double xm = 0.5 * (a + b), xr = 0.5 * (b - a);
  double s15 = 0.0, s31 = 0.0;
  for (int i = 0; i < 15; ++i) s15 += lo.w[i] * f(xm + xr * lo.x[i]);
  for (int i = 0; i < 31; ++i) s31 += hi.w[i] * f(xm + xr * hi.x[i]);
  Panel p;
  p.a = a;
  p.b = b;
  p.value = s31 * xr;
  p.error = std::abs(s31 - s15) * xr;
  return p;
}

void sum_sorted(std::vector<Panel>& panels, double& value, double& error) {
  std::sort(panels.begin(), panels.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  value = 0.0;
  error = 0.0;
  for (const Panel& p : panels) {
    value += p.value;
    error += p.error;
  }
}

} // namespace

const GlRule& gl_rule(int n) {
  static std::map<int, GlRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gl(n)).first;
  return it->second;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    int n) {
  const GlRule& rule = gl_rule(n);
  const double xm = 0.5 * (a + b), xr = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += rule.w[i] * f(xm + xr * rule.x[i]);
  return s * xr;
}

QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  const std::vector<double>& edges) {
  if (edges.size() < 2)
    throw std::invalid_argument("integrate_panels: need at least 2 edges");
  std::vector<Panel> panels;
  panels.reserve(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (edges[i + 1] > edges[i]) panels.push_back(eval_panel(f, edges[i], edges[i + 1]));
  QuadratureResult res;
  if (panels.empty()) return res;
  double v, e;
  sum_sorted(panels, v, e);
  res.value = v;
  res.error = e;
  res.panels = static_cast<int>(panels.size());
  return res;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::vector<double> edges, double rel_tol,
                                    double abs_tol, int max_panels) {
  if (edges.size() < 2)
    throw std::invalid_argument("integrate_adaptive: need at least 2 edges");
  std::sort(edges.begin(), edges.end());
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (edges[i + 1] > edges[i]) panels.push_back(eval_panel(f, edges[i], edges[i + 1]));
  if (panels.empty()) return {};

  const double span = edges.back() - edges.front();
  while (true) {
    double total = 0.0, toterr = 0.0, totabs = 0.0;
    for (const Panel& p : panels) {
      total += p.value;
      toterr += p.error;
      totabs += std::abs(p.value);
    }
    // the 1e-16*totabs floor stops refinement loops on integrals that vanish
    // by cancellation, where no relative target is meaningful
    const double goal =
        std::max({rel_tol * std::abs(total), abs_tol, 1e-16 * totabs});
    if (toterr <= goal) break;

    // deterministic worst-panel selection: largest error, first on ties
    int worst = -1;
    double werr = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      const Panel& p = panels[i];
      const double width = p.b - p.a;
      const bool splittable =
          width > 1e-15 * std::max({std::abs(p.a), std::abs(p.b), span});
      if (splittable && p.error > werr) {
        werr = p.error;
        worst = static_cast<int>(i);
      }
    }
    if (worst < 0 || static_cast<int>(panels.size()) >= max_panels)
      throw QuadratureError("adaptive quadrature did not reach tolerance",
                            toterr, goal);
    const Panel old = panels[static_cast<std::size_t>(worst)];
    const double mid = 0.5 * (old.a + old.b);
    panels[static_cast<std::size_t>(worst)] = eval_panel(f, old.a, mid);
    panels.push_back(eval_panel(f, mid, old.b));
  }

  QuadratureResult res;
  double v, e;
  sum_sorted(panels, v, e);
  res.value = v;
  res.error = e;
  res.panels = static_cast<int>(panels.size());
  return res;
}

std::vector<double> geometric_edges(double a, double b, double first,
                                    double ratio) {
  if (!(b > a)) throw std::invalid_argument("geometric_edges: need b > a");
  if (!(first > a && first < b))
    throw std::invalid_argument("geometric_edges: first edge out of range");
  if (!(ratio > 1.0)) throw std::invalid_argument("geometric_edges: ratio <= 1");
  std::vector<double> edges{a};
  double step = first - a;
  double x = first;
  while (x < b) {
    edges.push_back(x);
    step *= ratio;
    x = edges.back() + step;
  }
  edges.push_back(b);
  return edges;
}

std::vector<double> linear_edges(double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("linear_edges: n < 1");
  std::vector<double> edges(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    edges[static_cast<std::size_t>(i)] = a + (b - a) * i / n;
  return edges;
}

std::vector<double> oscillation_edges(double a, double b, double half_period) {
  if (!(b > a)) throw std::invalid_argument("oscillation_edges: need b > a");
  if (!(half_period > 0.0))
    throw std::invalid_argument("oscillation_edges: half_period <= 0");
  const double count = (b - a) / half_period;
  if (count > 500000.0)
    throw std::invalid_argument("oscillation_edges: too many panels");
  const int n = std::max(1, static_cast<int>(std::ceil(count)));
  return linear_edges(a, b, n);
}

std::vector<double> merge_edges(std::vector<double> a,
                                const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  out.reserve(a.size());
  for (double x : a) {
    if (out.empty()) {
      out.push_back(x);
      continue;
    }
    const double scale = std::max({1e-300, std::abs(out.back()), std::abs(x)});
    if (x - out.back() > 1e-14 * scale) out.push_back(x);
  }
  return out;
}

} // namespace spingas
