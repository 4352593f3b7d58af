#include "edgestat/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "edgestat/gauss_legendre.hpp"

namespace edgestat {

namespace {

constexpr long double kAi0 = 0.355028053887817239260063186004183176L;
constexpr long double kAip0 = -0.258819403792806798405183560189203963L;
constexpr double kSeriesCut = 8.0;
constexpr double kUnderflow = 120.0;

constexpr int kTailTop = 20;
constexpr int kLeftAnchors = 200;
constexpr int kPanelNodes = 20;

const GaussLegendreRule<long double>& panel_rule() {
  static const GaussLegendreRule<long double> rule = gauss_legendre<long double>(kPanelNodes);
  return rule;
}

long double panel_integral(long double a, long double b) {
  const auto& r = panel_rule();
  const long double h = 0.5L * (b - a), m = 0.5L * (b + a);
  long double s = 0;
  for (int i = 0; i < kPanelNodes; ++i) s += r.weights(i) * detail::airy_pair_ld(m + h * r.nodes(i)).ai;
  return s * h;
}

struct PrimitiveTables {
  // tail[k] = int_k^inf Ai, k = 0..kTailTop
  std::vector<long double> tail;
  // left[k] = int_{-inf}^{-k} Ai, k = 0..kLeftAnchors
  std::vector<long double> left;
};

long double tail_asymptotic(long double x) {
  const long double z = 2.0L / 3.0L * x * std::sqrt(x);
  return std::exp(-z) / (2.0L * std::sqrt(std::numbers::pi_v<long double>) * std::pow(x, 0.75L)) *
         (1.0L - 41.0L / (72.0L * z));
}

const PrimitiveTables& tables() {
  static const PrimitiveTables t = [] {
    PrimitiveTables p;
    p.tail.assign(kTailTop + 1, 0.0L);
    p.tail[kTailTop] = tail_asymptotic(kTailTop);
    for (int k = kTailTop - 1; k >= 0; --k) p.tail[k] = p.tail[k + 1] + panel_integral(k, k + 1);
    p.left.assign(kLeftAnchors + 1, 0.0L);
    p.left[0] = 2.0L / 3.0L;
    for (int k = 1; k <= kLeftAnchors; ++k) p.left[k] = p.left[k - 1] - panel_integral(-k, -k + 1);
    return p;
  }();
  return t;
}

}  // namespace

namespace detail {

AiryPairLD airy_series(long double x) {
  // Ai = c1 f - c2 g with f = sum a_k x^{3k}, g = sum b_k x^{3k+1}
  const long double x3 = x * x * x;
  long double f = 1, fp = 0, g = x, gp = 1;
  long double a = 1, b = 1, p3 = 1;  // p3 = x^{3k}
  long double scale = 1;
  for (int k = 1; k < 200; ++k) {
    a /= (3.0L * k - 1) * (3.0L * k);
    b /= (3.0L * k) * (3.0L * k + 1);
    const long double p3prev = p3;
    p3 *= x3;
    const long double tf = a * p3, tg = b * p3 * x;
    const long double tfp = 3.0L * k * a * p3prev * x * x;
    const long double tgp = (3.0L * k + 1) * b * p3;
    f += tf;
    g += tg;
    fp += tfp;
    gp += tgp;
    scale = std::max({std::abs(f), std::abs(g), std::abs(fp), std::abs(gp), 1.0L});
    if (std::abs(tf) + std::abs(tg) + std::abs(tfp) + std::abs(tgp) < 1e-24L * scale) break;
  }
  return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

AiryPairLD airy_asymptotic(long double x) {
  const long double z = std::abs(x);
  const long double zeta = 2.0L / 3.0L * z * std::sqrt(z);
  const long double rpi = 1.0L / std::sqrt(std::numbers::pi_v<long double>);
  const long double q = std::sqrt(std::sqrt(z));
  // u_k, v_k / zeta^k, truncated at the smallest term
  long double u = 1, v = 1;
  long double su[2] = {1, 0}, sv[2] = {1, 0};  // even/odd partial sums with alternating sign
  long double sup = 1, svp = 1;                // sums of (-1)^k u_k / zeta^k for x > 0
  long double last = 1;
  for (int k = 1; k < 80; ++k) {
    u *= (6.0L * k - 5) * (6.0L * k - 3) * (6.0L * k - 1) / ((2.0L * k - 1) * 216.0L * k) / zeta;
    v = -(6.0L * k + 1) / (6.0L * k - 1) * u;
    if (std::abs(u) > last) break;
    last = std::abs(u);
    const long double sgn = (k % 2 == 0) ? 1.0L : -1.0L;
    sup += sgn * u;
    svp += sgn * v;
    const long double sgn2 = ((k / 2) % 2 == 0) ? 1.0L : -1.0L;
    su[k % 2] += sgn2 * u;
    sv[k % 2] += sgn2 * v;
    if (last < 1e-22L) break;
  }
  if (x > 0) {
    const long double e = std::exp(-zeta) * 0.5L * rpi;
    return {e / q * sup, -e * q * svp};
  }
  const long double th = zeta - std::numbers::pi_v<long double> / 4;
  const long double c = std::cos(th), s = std::sin(th);
  return {rpi / q * (c * su[0] + s * su[1]), rpi * q * (s * sv[0] - c * sv[1])};
}

AiryPairLD airy_pair_ld(long double x) {
  if (x > kUnderflow) return {0, 0};
  if (std::abs(x) <= kSeriesCut) return airy_series(x);
  return airy_asymptotic(x);
}

}  // namespace detail

AiryPair airy_pair(double x) {
  const auto p = detail::airy_pair_ld(x);
  return {static_cast<double>(p.ai), static_cast<double>(p.aip)};
}

double airy_ai(double x) { return airy_pair(x).ai; }
double airy_ai_prime(double x) { return airy_pair(x).aip; }

double airy_tail(double x) {
  if (x >= kTailTop) return x > kUnderflow ? 0.0 : static_cast<double>(tail_asymptotic(x));
  if (x >= 0) {
    const auto& t = tables();
    const int k = static_cast<int>(std::floor(x));
    long double v = t.tail[k + 1] + panel_integral(x, k + 1);
    return static_cast<double>(v);
  }
  return 1.0 - airy_primitive(x);
}

double airy_primitive(double x) {
  if (x >= 0) return static_cast<double>(1.0L - static_cast<long double>(airy_tail(x)));
  const auto& t = tables();
  const double z = -x;
  if (z < kLeftAnchors) {
    const int k = static_cast<int>(std::floor(z));
    // int_{-inf}^{x} = left[k] - int_{-z}^{-k}
    return static_cast<double>(t.left[k] - panel_integral(x, -static_cast<long double>(k)));
  }
  // I_n = int_{-inf}^x Ai t^{-n} = Ai' x^{-n-1} + (n+1) Ai x^{-n-2} + (n+1)(n+2) I_{n+3}
  const auto p = airy_pair(x);
  double sum = 0.0, c = 1.0;
  for (int n = 0; n <= 15; n += 3) {
    sum += c * (p.aip * std::pow(x, -n - 1) + (n + 1) * p.ai * std::pow(x, -n - 2));
    c *= (n + 1.0) * (n + 2.0);
  }
  return sum;
}

double b_function(double x) {
  if (x >= 0) return 1.0 - 2.0 * airy_tail(x);
  return 2.0 * airy_primitive(x) - 1.0;
}

double log_gamma(double x) {
  if (!(x > 0)) throw std::domain_error("log_gamma: argument must be > 0");
  return std::lgamma(x);
}

double airy_ai_zero(int k) {
  if (k < 1) throw std::invalid_argument("airy_ai_zero: k must be >= 1");
  const double t = 3.0 * std::numbers::pi / 8.0 * (4.0 * k - 1.0);
  double x = -std::pow(t, 2.0 / 3.0) * (1.0 + 5.0 / 48.0 / (t * t));
  for (int it = 0; it < 50; ++it) {
    const auto p = airy_pair(x);
    const double dx = p.ai / p.aip;
    x -= dx;
    if (std::abs(dx) < 1e-15 * std::abs(x)) break;
  }
  return x;
}

}  // namespace edgestat
