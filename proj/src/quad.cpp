#include "edgestat/quad.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>

#include "edgestat/gauss_legendre.hpp"

namespace edgestat {

void QuadratureSpec::validate() const {
  if (nodes_per_panel < 4) throw std::invalid_argument("QuadratureSpec: nodes_per_panel must be >= 4");
  if (!(abs_tol > 0) || !(rel_tol > 0)) throw std::invalid_argument("QuadratureSpec: tolerances must be > 0");
  if (!(left_cut < right_cut)) throw std::invalid_argument("QuadratureSpec: left_cut must be < right_cut");
  if (max_level < 1) throw std::invalid_argument("QuadratureSpec: max_level must be >= 1");
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

Interval effective_interval(const Interval& d, const QuadratureSpec& spec) {
  Interval e = d;
  if (std::isinf(e.lo)) e.lo = e.hi > spec.left_cut ? spec.left_cut : e.hi - 1.0;
  if (std::isinf(e.hi)) e.hi = e.lo < spec.right_cut ? spec.right_cut : e.lo + 1.0;
  return e;
}

namespace {

const GaussLegendreRule<double>& cached_rule(int n) {
  static std::mutex m;
  static std::map<int, GaussLegendreRule<double>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre<double>(n)).first;
  return it->second;
}

void push_panel(NodeSet& ns, const GaussLegendreRule<double>& r, int n, double a, double b) {
  const double h = 0.5 * (b - a), m = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    ns.x.push_back(m + h * r.nodes(i));
    ns.w.push_back(h * r.weights(i));
  }
}

// Panels next to a finite endpoint of the original domain are split geometrically (ratio 1/4),
// deeper at each level, so algebraic endpoint singularities still converge.
void push_graded(NodeSet& ns, const GaussLegendreRule<double>& r, int n, double a, double b, bool grade_a,
                 bool grade_b, int level) {
  if (!grade_a && !grade_b) {
    push_panel(ns, r, n, a, b);
    return;
  }
  if (grade_a && grade_b) {
    const double m = 0.5 * (a + b);
    push_graded(ns, r, n, a, m, true, false, level);
    push_graded(ns, r, n, m, b, false, true, level);
    return;
  }
  const int depth = 6 + 2 * level;
  const double len = b - a;
  double q = 1.0;
  for (int j = 0; j < depth; ++j) {
    const double outer = q, inner = q * 0.25;
    if (grade_a)
      push_panel(ns, r, n, a + len * inner, a + len * outer);
    else
      push_panel(ns, r, n, b - len * outer, b - len * inner);
    q = inner;
  }
  if (grade_a)
    push_panel(ns, r, n, a, a + len * q);
  else
    push_panel(ns, r, n, b - len * q, b);
}

NodeSet gl_nodes(Interval e, bool grade_lo, bool grade_hi, const QuadratureSpec& spec, int level) {
  NodeSet ns;
  const double len = e.hi - e.lo;
  if (!(len > 0)) return ns;
  const double width = 2.0 / static_cast<double>(1 << level);
  const int panels = std::max(1, static_cast<int>(std::ceil(len / width - 1e-12)));
  const auto& r = cached_rule(spec.nodes_per_panel);
  const int n = spec.nodes_per_panel;
  ns.x.reserve(static_cast<std::size_t>(panels) * n);
  ns.w.reserve(static_cast<std::size_t>(panels) * n);
  for (int p = 0; p < panels; ++p) {
    const double a = e.lo + len * p / panels;
    const double b = (p + 1 == panels) ? e.hi : e.lo + len * (p + 1) / panels;
    push_graded(ns, r, n, a, b, grade_lo && p == 0, grade_hi && p + 1 == panels, level);
  }
  ns.panels = panels;
  return ns;
}

NodeSet de_nodes(const Interval& d, int level) {
  NodeSet ns;
  const double hpi = std::numbers::pi / 2;
  const double h = 0.5 / static_cast<double>(1 << level);
  const bool lo_inf = std::isinf(d.lo), hi_inf = std::isinf(d.hi);
  const double tmax = (!lo_inf && !hi_inf) ? 3.2 : 4.0;
  const int k = static_cast<int>(std::ceil(tmax / h));
  for (int i = -k; i <= k; ++i) {
    const double t = i * h;
    const double s = hpi * std::sinh(t), c = hpi * std::cosh(t);
    double x, w;
    if (!lo_inf && !hi_inf) {
      const double m = 0.5 * (d.lo + d.hi), r = 0.5 * (d.hi - d.lo);
      const double ch = std::cosh(s);
      x = m + r * std::tanh(s);
      w = r * c / (ch * ch);
      if (x <= d.lo || x >= d.hi) continue;
    } else if (!lo_inf) {
      const double e = std::exp(s);
      x = d.lo + e;
      w = c * e;
      if (x <= d.lo) continue;
    } else if (!hi_inf) {
      const double e = std::exp(s);
      x = d.hi - e;
      w = c * e;
      if (x >= d.hi) continue;
    } else {
      x = std::sinh(s);
      w = c * std::cosh(s);
    }
    if (!std::isfinite(x) || !std::isfinite(w)) continue;
    ns.x.push_back(x);
    ns.w.push_back(w * h);
  }
  ns.panels = static_cast<int>(ns.x.size());
  return ns;
}

}  // namespace

NodeSet build_nodes(const Interval& d, const QuadratureSpec& spec, int level, bool graded) {
  if (spec.rule == Rule::GaussLegendre)
    return gl_nodes(effective_interval(d, spec), graded && std::isfinite(d.lo), graded && std::isfinite(d.hi), spec,
                    level);
  return de_nodes(d, level);
}

}  // namespace edgestat
