#ifndef EDGESTAT_QUAD_HPP
#define EDGESTAT_QUAD_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgestat {

enum class Rule { GaussLegendre, DoubleExponential };

struct QuadratureSpec {
  Rule rule = Rule::GaussLegendre;
  int nodes_per_panel = 16;
  double abs_tol = 1e-12;
  double rel_tol = 1e-11;
  // Replace infinite bounds for the Gauss-Legendre rule.
  double left_cut = -40.0;
  double right_cut = 40.0;
  int max_level = 8;

  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  int panels_used = 0;
};

/// Thrown when the tolerance is not met; carries the best estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadResult& best() const { return best_; }

 private:
  QuadResult best_;
};

struct Interval {
  double lo;
  double hi;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;
  int panels = 0;
};

/// Quadrature nodes for refinement level `level` (panel halving or step halving).
/// `graded`: geometric panels at finite endpoints of d (Gauss-Legendre only).
NodeSet build_nodes(const Interval& d, const QuadratureSpec& spec, int level, bool graded = false);

/// Pairwise (cascade) sum, fixed order.
double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

namespace detail {
inline bool converged(double prev, double cur, const QuadratureSpec& s) {
  return std::abs(cur - prev) <= std::max(s.abs_tol, s.rel_tol * std::abs(cur));
}
}  // namespace detail

template <class F>
QuadResult integrate_1d(F&& f, const Interval& d, const QuadratureSpec& spec) {
  spec.validate();
  if (d.lo == d.hi) return {};
  if (d.lo > d.hi) {
    auto r = integrate_1d(f, Interval{d.hi, d.lo}, spec);
    r.value = -r.value;
    return r;
  }
  double prev = 0.0;
  QuadResult best;
  std::vector<double> terms;
  for (int level = 0; level <= spec.max_level; ++level) {
    const NodeSet ns = build_nodes(d, spec, level, true);
    terms.resize(ns.x.size());
    for (std::size_t i = 0; i < ns.x.size(); ++i) {
      const double w = ns.w[i];
      terms[i] = w == 0.0 ? 0.0 : w * f(ns.x[i]);
    }
    const double cur = pairwise_sum(terms);
    if (!std::isfinite(cur)) throw QuadratureError("integrate_1d: non-finite integrand value", best);
    if (level > 0) {
      best = {cur, std::abs(cur - prev), ns.panels};
      if (detail::converged(prev, cur, spec)) return best;
    } else {
      best = {cur, std::abs(cur), ns.panels};
    }
    prev = cur;
  }
  throw QuadratureError("integrate_1d: tolerance not met", best);
}

template <class F>
QuadResult integrate_2d(F&& f, const Interval& dx, const Interval& dy, const QuadratureSpec& spec) {
  spec.validate();
  double prev = 0.0;
  QuadResult best;
  std::vector<double> rows, inner;
  for (int level = 0; level <= spec.max_level; ++level) {
    const NodeSet nx = build_nodes(dx, spec, level);
    const NodeSet ny = build_nodes(dy, spec, level);
    if (nx.x.size() * ny.x.size() > 16'000'000) break;
    rows.resize(nx.x.size());
    inner.resize(ny.x.size());
    for (std::size_t i = 0; i < nx.x.size(); ++i) {
      for (std::size_t j = 0; j < ny.x.size(); ++j)
        inner[j] = (ny.w[j] == 0.0 || nx.w[i] == 0.0) ? 0.0 : ny.w[j] * f(nx.x[i], ny.x[j]);
      rows[i] = nx.w[i] * pairwise_sum(inner);
    }
    const double cur = pairwise_sum(rows);
    if (!std::isfinite(cur)) throw QuadratureError("integrate_2d: non-finite integrand value", best);
    if (level > 0) {
      best = {cur, std::abs(cur - prev), nx.panels * ny.panels};
      if (detail::converged(prev, cur, spec)) return best;
    } else {
      best = {cur, std::abs(cur), nx.panels * ny.panels};
    }
    prev = cur;
  }
  throw QuadratureError("integrate_2d: tolerance not met", best);
}

Interval effective_interval(const Interval& d, const QuadratureSpec& spec);

/// Integral of sgn(y - x) f(x, y) over d x d, split at the diagonal.
template <class F>
QuadResult sign_weighted_2d(F&& f, const Interval& d, const QuadratureSpec& spec) {
  spec.validate();
  const Interval e = spec.rule == Rule::GaussLegendre ? effective_interval(d, spec) : d;
  double prev = 0.0;
  QuadResult best;
  std::vector<double> rows, inner;
  for (int level = 0; level <= spec.max_level; ++level) {
    const NodeSet nx = build_nodes(e, spec, level);
    rows.resize(nx.x.size());
    long long evals = 0;
    for (std::size_t i = 0; i < nx.x.size(); ++i) {
      const double x = nx.x[i];
      const NodeSet up = build_nodes(Interval{x, e.hi}, spec, level);
      const NodeSet lo = build_nodes(Interval{e.lo, x}, spec, level);
      inner.resize(up.x.size());
      for (std::size_t j = 0; j < up.x.size(); ++j) inner[j] = up.w[j] == 0.0 ? 0.0 : up.w[j] * f(x, up.x[j]);
      const double a = pairwise_sum(inner);
      inner.resize(lo.x.size());
      for (std::size_t j = 0; j < lo.x.size(); ++j) inner[j] = lo.w[j] == 0.0 ? 0.0 : lo.w[j] * f(x, lo.x[j]);
      const double b = pairwise_sum(inner);
      rows[i] = nx.w[i] == 0.0 ? 0.0 : nx.w[i] * (a - b);
      evals += static_cast<long long>(up.x.size() + lo.x.size());
    }
    const double cur = pairwise_sum(rows);
    if (!std::isfinite(cur)) throw QuadratureError("sign_weighted_2d: non-finite integrand value", best);
    if (level > 0) {
      best = {cur, std::abs(cur - prev), nx.panels};
      if (detail::converged(prev, cur, spec)) return best;
    } else {
      best = {cur, std::abs(cur), nx.panels};
    }
    prev = cur;
    if (evals > 8'000'000) break;
  }
  throw QuadratureError("sign_weighted_2d: tolerance not met", best);
}

}  // namespace edgestat

#endif
