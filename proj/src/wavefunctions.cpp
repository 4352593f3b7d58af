#include "edgestat/wavefunctions.hpp"

#include <climits>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "edgestat/specfun.hpp"

namespace edgestat {

namespace {

constexpr int kRescaleBits = 400;
const double kBig = std::ldexp(1.0, kRescaleBits);
const double kSmall = std::ldexp(1.0, -kRescaleBits);

struct Scaled {
  double m;
  long e;
};

double assemble(double m, long e) {
  if (m == 0.0) return 0.0;
  if (e < INT_MIN / 2) return 0.0;
  if (e > INT_MAX / 2) return m > 0 ? HUGE_VAL : -HUGE_VAL;
  return std::ldexp(m, static_cast<int>(e));
}

// pref * e^{-q} as mantissa and power of two
Scaled exp_neg(double q, double pref) {
  constexpr double ln2_hi = 6.93147180369123816490e-01;
  constexpr double ln2_lo = 1.90821492927058770002e-10;
  const double k = std::nearbyint(q / std::numbers::ln2);
  const double r = (q - k * ln2_hi) - k * ln2_lo;
  return {pref * std::exp(-r), -static_cast<long>(k)};
}

// Three-term recurrence p_j = (A_j p_{j-1} - B_j p_{j-2}) / C_j with a shared exponent.
struct Chain {
  double p0 = 0.0;  // p_{j-1}
  double p1 = 0.0;  // p_j
  long e = 0;
  int j = 0;

  // returns the exponent shift applied (>0 when values were scaled down)
  long normalize() {
    const double a = std::abs(p1);
    if (a > kBig) {
      p0 *= kSmall;
      p1 *= kSmall;
      e += kRescaleBits;
      return kRescaleBits;
    }
    if (a != 0.0 && a < kSmall && std::abs(p0) < kSmall) {
      p0 *= kBig;
      p1 *= kBig;
      e -= kRescaleBits;
      return -kRescaleBits;
    }
    return 0;
  }
};

struct HermiteStep {
  double x;
  void operator()(Chain& c) const {
    const int j = c.j + 1;
    const double p2 = std::sqrt(2.0 / j) * x * c.p1 - std::sqrt((j - 1.0) / j) * c.p0;
    c.p0 = c.p1;
    c.p1 = p2;
    c.j = j;
  }
};

struct LaguerreStep {
  double a;
  double x;
  void operator()(Chain& c) const {
    const int j = c.j + 1;
    const double p2 =
        ((2.0 * j - 1.0 + a - x) * c.p1 - std::sqrt((j - 1.0) * (j - 1.0 + a)) * c.p0) / std::sqrt(j * (j + a));
    c.p0 = c.p1;
    c.p1 = p2;
    c.j = j;
  }
};

Chain hermite_start(double x) {
  const Scaled s = exp_neg(0.5 * x * x, std::pow(std::numbers::pi, -0.25));
  Chain c;
  c.p1 = s.m;
  c.e = s.e;
  return c;
}

void check_laguerre(double alpha, double x) {
  if (!(alpha > -1)) throw std::domain_error("Laguerre wavefunction: alpha must be > -1");
  if (!(x > 0)) {
    const double h = 0.5 * alpha;
    if (h != std::floor(h) || h < 0) throw std::domain_error("Laguerre wavefunction: x must be > 0");
  }
}

Chain laguerre_start(double alpha, double x) {
  Chain c;
  if (x > 0) {
    const double q = -(0.5 * alpha * std::log(x) - 0.5 * x - 0.5 * log_gamma(alpha + 1.0));
    const Scaled s = exp_neg(q, 1.0);
    c.p1 = s.m;
    c.e = s.e;
  } else {
    int ex = 0;
    const double v = std::pow(x, 0.5 * alpha) * std::exp(-0.5 * x - 0.5 * log_gamma(alpha + 1.0));
    c.p1 = std::frexp(v, &ex);
    c.e = ex;
  }
  return c;
}

template <class Step>
WaveTriple run_triple(Chain c, const Step& step, int n) {
  if (n < 0) throw std::invalid_argument("wavefunction index must be >= 0");
  double pm2 = 0.0;  // p_{j-2} in the current exponent
  for (int j = 0; j < n; ++j) {
    pm2 = c.p0;
    step(c);
    const long sh = c.normalize();
    if (sh != 0) pm2 = std::ldexp(pm2, static_cast<int>(-sh));
  }
  return {assemble(c.p1, c.e), assemble(c.p0, c.e), n >= 2 ? assemble(pm2, c.e) : 0.0};
}

template <class Step>
double run_sum(Chain cx, const Step& sx, Chain cy, const Step& sy, int n) {
  if (n < 1) return 0.0;
  double s = cx.p1 * cy.p1;
  for (int j = 1; j < n; ++j) {
    sx(cx);
    sy(cy);
    const long sh = cx.normalize() + cy.normalize();
    if (sh != 0) s = std::ldexp(s, static_cast<int>(-sh));
    s += cx.p1 * cy.p1;
  }
  return assemble(s, cx.e + cy.e);
}

template <class Step>
Eigen::VectorXd run_all(Chain c, const Step& step, int n) {
  Eigen::VectorXd v(std::max(n, 0));
  if (n < 1) return v;
  v(0) = assemble(c.p1, c.e);
  for (int j = 1; j < n; ++j) {
    step(c);
    c.normalize();
    v(j) = assemble(c.p1, c.e);
  }
  return v;
}

}  // namespace

double phi_hermite(int j, double x) { return hermite_triple(j, x).top; }

double phi_laguerre(int j, double alpha, double x) { return laguerre_triple(j, alpha, x).top; }

WaveTriple hermite_triple(int n, double x) { return run_triple(hermite_start(x), HermiteStep{x}, n); }

WaveTriple laguerre_triple(int n, double alpha, double x) {
  check_laguerre(alpha, x);
  return run_triple(laguerre_start(alpha, x), LaguerreStep{alpha, x}, n);
}

double hermite_direct_sum(int n, double x, double y) {
  return run_sum(hermite_start(x), HermiteStep{x}, hermite_start(y), HermiteStep{y}, n);
}

double laguerre_direct_sum(int n, double alpha, double x, double y) {
  check_laguerre(alpha, x);
  check_laguerre(alpha, y);
  return run_sum(laguerre_start(alpha, x), LaguerreStep{alpha, x}, laguerre_start(alpha, y), LaguerreStep{alpha, y}, n);
}

Eigen::VectorXd hermite_all(int n, double x) { return run_all(hermite_start(x), HermiteStep{x}, n); }

Eigen::VectorXd laguerre_all(int n, double alpha, double x) {
  check_laguerre(alpha, x);
  return run_all(laguerre_start(alpha, x), LaguerreStep{alpha, x}, n);
}

}  // namespace edgestat
