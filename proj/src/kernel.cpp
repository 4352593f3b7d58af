#include "edgestat/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "edgestat/specfun.hpp"

namespace edgestat {

namespace {

QuadratureSpec tight_spec() {
  QuadratureSpec s;
  s.nodes_per_panel = 20;
  s.abs_tol = 1e-14;
  s.rel_tol = 1e-13;
  s.max_level = 6;
  return s;
}

// Taylor of the CD numerator h(y) = f(x)g(y) - g(x)f(y): h', h'', h''' at y = x
struct Derivs {
  double h1, h2, h3;
};

double taylor(const Derivs& d, double dy) { return d.h1 + d.h2 * dy / 2.0 + d.h3 * dy * dy / 6.0; }

}  // namespace

double airy_kernel(double x, double ax, double apx, double y, double ay, double apy) {
  if (x > y) {
    std::swap(x, y);
    std::swap(ax, ay);
    std::swap(apx, apy);
  }
  const double d = y - x;
  if (d < kDiagonalDelta) {
    const double A = ax, P = apx;
    return (P * P - x * A * A) - A * A * d / 2.0 - (A * P + x * x * A * A - x * P * P) * d * d / 6.0;
  }
  return (ax * apy - ay * apx) / (x - y);
}

double airy_kernel(double x, double y) {
  const auto px = airy_pair(x), py = airy_pair(y);
  return airy_kernel(x, px.ai, px.aip, y, py.ai, py.aip);
}

double airy_kernel_factorized(double x, double y) {
  const double hi = std::max(1.0, 16.0 - std::max(x, y));
  return integrate_1d([&](double t) { return airy_ai(x + t) * airy_ai(y + t); }, Interval{0.0, hi}, tight_spec())
      .value;
}

double l_function(double x, double y) {
  const double hi = std::max(1.0, 16.0 - y);
  return -integrate_1d([&](double t) { return airy_ai(y + t) * b_function(x + t); }, Interval{0.0, hi}, tight_spec())
              .value;
}

double cd_kernel_hermite(int N, double x, const WaveTriple& tx, double y, const WaveTriple& ty) {
  if (x > y) return cd_kernel_hermite(N, y, ty, x, tx);
  const double c = std::sqrt(N / 2.0);
  const double d = y - x;
  if (d < kDiagonalDelta) {
    const double f = tx.top, g = tx.prev, k = tx.prev2;
    const double fp = -x * f + std::sqrt(2.0 * N) * g;
    const double gp = -x * g + std::sqrt(2.0 * N - 2.0) * k;
    const double w = f * gp - g * fp;
    Derivs dv;
    dv.h1 = w;
    dv.h2 = 2.0 * f * g;
    dv.h3 = (x * x - 2.0 * N) * w + (f * gp + g * fp);
    return -c * taylor(dv, d);
  }
  return c * (tx.top * ty.prev - tx.prev * ty.top) / (x - y);
}

double cd_kernel_hermite(int N, double x, double y) {
  if (N < 1) throw std::invalid_argument("cd_kernel_hermite: N must be >= 1");
  return cd_kernel_hermite(N, x, hermite_triple(N, x), y, hermite_triple(N, y));
}

double cd_kernel_laguerre(int N, double alpha, double x, const WaveTriple& tx, double y, const WaveTriple& ty) {
  if (x > y) return cd_kernel_laguerre(N, alpha, y, ty, x, tx);
  const double c = std::sqrt(N * (N + alpha));
  const double d = y - x;
  if (d < kDiagonalDelta) {
    const double n = N;
    const double fp = ((alpha / 2.0 + n) / x - 0.5) * tx.top - std::sqrt(n * (n + alpha)) / x * tx.prev;
    const double gp =
        ((alpha / 2.0 + n - 1.0) / x - 0.5) * tx.prev - std::sqrt((n - 1.0) * (n - 1.0 + alpha)) / x * tx.prev2;
    // psi'' = -psi'/x - q psi, differentiated twice more
    auto ders = [&](double m, double v0, double v1) {
      const double e = m + (alpha + 1.0) / 2.0, a2 = alpha * alpha;
      const double q = e / x - 0.25 - a2 / (4.0 * x * x);
      const double q1 = -e / (x * x) + a2 / (2.0 * x * x * x);
      const double q2 = 2.0 * e / (x * x * x) - 1.5 * a2 / (x * x * x * x);
      const double v2 = -v1 / x - q * v0;
      const double v3 = -v2 / x + v1 / (x * x) - q1 * v0 - q * v1;
      const double v4 = -v3 / x + 2.0 * v2 / (x * x) - 2.0 * v1 / (x * x * x) - q2 * v0 - 2.0 * q1 * v1 - q * v2;
      return std::array<double, 5>{v0, v1, v2, v3, v4};
    };
    const auto F = ders(n, tx.top, fp), G = ders(n - 1.0, tx.prev, gp);
    double h[5];
    for (int k = 1; k <= 4; ++k) h[k] = F[0] * G[k] - G[0] * F[k];
    return c * (h[1] + d * (h[2] / 2.0 + d * (h[3] / 6.0 + d * h[4] / 24.0)));
  }
  return -c * (tx.top * ty.prev - tx.prev * ty.top) / (x - y);
}

double cd_kernel_laguerre(int N, double alpha, double x, double y) {
  if (N < 1) throw std::invalid_argument("cd_kernel_laguerre: N must be >= 1");
  if (!(x > 0) || !(y > 0)) throw std::domain_error("cd_kernel_laguerre: arguments must be > 0");
  return cd_kernel_laguerre(N, alpha, x, laguerre_triple(N, alpha, x), y, laguerre_triple(N, alpha, y));
}

double s_kernel_lse(int N, double alpha, double x, double y) {
  if (N < 1) throw std::invalid_argument("s_kernel_lse: N must be >= 1");
  if (!(alpha > 0)) throw std::invalid_argument("s_kernel_lse: alpha must be > 0");
  if (!(x > 0) || !(y > 0)) throw std::domain_error("s_kernel_lse: arguments must be > 0");
  return std::sqrt(x / y) * laguerre_direct_sum(2 * N + 1, alpha - 1.0, x, y);
}

double s_kernel_loe(int N, double alpha, double x, double y) {
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("s_kernel_loe: N must be even and >= 2");
  if (!(alpha > -2)) throw std::invalid_argument("s_kernel_loe: alpha must be > -2");
  if (!(x > 0) || !(y > 0)) throw std::domain_error("s_kernel_loe: arguments must be > 0");
  return std::sqrt(x / y) * laguerre_direct_sum(N, alpha + 1.0, x, y);
}

double eps_transform(const std::function<double(double)>& phi, double x, const Interval& support,
                     const QuadratureSpec& spec) {
  const double lo = std::min(support.lo, x), hi = std::max(support.hi, x);
  const double left = integrate_1d(phi, Interval{lo, x}, spec).value;
  const double right = integrate_1d(phi, Interval{x, hi}, spec).value;
  return 0.5 * (left - right);
}

double scaled_edge_kernel(const EnsembleKind& kind, int N, double x, double y) {
  const EdgeScaling s = edge_scaling(kind, N);
  const double sigma = 1.0 / s.stat_scale;
  const double ux = s.from_edge(x), uy = s.from_edge(y);
  if (kind.family == Family::Gaussian) {
    const int n = kind.beta == 4 ? 2 * N + 1 : N;
    return sigma * cd_kernel_hermite(n, ux, uy);
  }
  if (!(ux > 0) || !(uy > 0)) throw std::domain_error("scaled_edge_kernel: unscaled Laguerre argument must be > 0");
  switch (kind.beta) {
    case 2:
      return sigma * cd_kernel_laguerre(N, kind.alpha, ux, uy);
    case 4:
      return sigma * s_kernel_lse(N, kind.alpha, ux, uy);
    default:
      return sigma * s_kernel_loe(N, kind.alpha, ux, uy);
  }
}

Eigen::MatrixXd scaled_edge_kernel_matrix(const EnsembleKind& kind, int N, const Eigen::VectorXd& xi) {
  const EdgeScaling s = edge_scaling(kind, N);
  const double sigma = 1.0 / s.stat_scale;
  const int M = static_cast<int>(xi.size());
  Eigen::VectorXd u(M);
  for (int i = 0; i < M; ++i) u(i) = s.from_edge(xi(i));
  Eigen::MatrixXd K(M, M);
  const bool laguerre = kind.family == Family::Laguerre;
  if (laguerre)
    for (int i = 0; i < M; ++i)
      if (!(u(i) > 0)) throw std::domain_error("scaled_edge_kernel: unscaled Laguerre argument must be > 0");
  if (laguerre && kind.beta != 2) {
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) K(i, j) = scaled_edge_kernel(kind, N, xi(i), xi(j));
    return K;
  }
  const int n = (!laguerre && kind.beta == 4) ? 2 * N + 1 : N;
  std::vector<WaveTriple> t(M);
  for (int i = 0; i < M; ++i) t[i] = laguerre ? laguerre_triple(n, kind.alpha, u(i)) : hermite_triple(n, u(i));
  for (int i = 0; i < M; ++i)
    for (int j = i; j < M; ++j) {
      const double v = laguerre ? cd_kernel_laguerre(n, kind.alpha, u(i), t[i], u(j), t[j])
                                : cd_kernel_hermite(n, u(i), t[i], u(j), t[j]);
      K(i, j) = K(j, i) = sigma * v;
    }
  return K;
}

EdgeLimit edge_wavefunction_limit(const EnsembleKind& kind, WaveKind which, int N, double x) {
  kind.validate(N);
  if (N < 10) throw std::invalid_argument("edge_wavefunction_limit: N must be >= 10");
  if (kind.beta == 2) throw std::invalid_argument("edge_wavefunction_limit: defined for beta = 1, 4 only");
  const double n = N;
  const bool top = which == WaveKind::PhiTop || which == WaveKind::EpsTop;
  const bool eps = which == WaveKind::EpsTop || which == WaveKind::EpsNext;

  double center, scale, amp_phi, amp_eps;
  int index;
  double sign_next;
  std::function<double(double)> phi;
  Interval support{};
  if (kind.family == Family::Gaussian) {
    if (kind.beta == 4) {
      center = std::sqrt(4.0 * n);
      scale = std::pow(2.0, -2.0 / 3.0) * std::pow(n, -1.0 / 6.0);
      amp_phi = std::pow(2.0, 1.0 / 6.0) * std::pow(n, -1.0 / 12.0);
      amp_eps = std::pow(2.0, -1.5) * std::pow(n, -0.25);
      index = top ? 2 * N : 2 * N + 1;
    } else {
      center = std::sqrt(2.0 * n);
      scale = std::pow(2.0, -0.5) * std::pow(n, -1.0 / 6.0);
      amp_phi = std::pow(2.0, 0.25) * std::pow(n, -1.0 / 12.0);
      amp_eps = std::pow(2.0, -1.25) * std::pow(n, -0.25);
      index = top ? N : N - 1;
    }
    sign_next = 1.0;
    phi = [index](double u) { return phi_hermite(index, u); };
    const double r = std::sqrt(2.0 * index + 1.0) + 12.0;
    support = {-r, r};
  } else {
    double a;
    if (kind.beta == 4) {
      a = kind.alpha - 1.0;
      center = 8.0 * n + 2.0 * kind.alpha;
      scale = std::pow(2.0, 5.0 / 3.0) * std::cbrt(n);
      amp_phi = std::pow(2.0, -13.0 / 6.0) * std::pow(n, -5.0 / 6.0);
      amp_eps = std::pow(2.0, -1.5) * std::pow(n, -0.5);
      index = top ? 2 * N : 2 * N + 1;
    } else {
      a = kind.alpha + 1.0;
      center = 4.0 * n + 2.0 * kind.alpha + 4.0;
      scale = std::pow(2.0, 4.0 / 3.0) * std::cbrt(n);
      amp_phi = std::pow(2.0, -4.0 / 3.0) * std::pow(n, -5.0 / 6.0);
      amp_eps = 0.5 * std::pow(n, -0.5);
      index = top ? N : N - 1;
    }
    sign_next = -1.0;
    phi = [index, a](double u) { return phi_laguerre(index, a, u) / std::sqrt(u); };
    const double r = 4.0 * index + 2.0 * a + 2.0;
    support = {0.0, r + 20.0 * std::cbrt(static_cast<double>(index + 1)) + 40.0};
  }
  const double sg = top ? 1.0 : sign_next;
  const double u = center + scale * x;
  if (!eps) return {phi(u), sg * amp_phi * airy_ai(x)};
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-10;
  spec.max_level = 10;
  if (kind.family == Family::Gaussian) return {eps_transform(phi, u, support, spec), sg * amp_eps * b_function(x)};
  // u = s^2 on [0, 1] removes the u^{-1/2} endpoint factor
  QuadratureSpec de = spec;
  de.rule = Rule::DoubleExponential;
  auto near0 = [&](double s) { return s == 0.0 ? 0.0 : 2.0 * s * phi(s * s); };
  auto piece = [&](double a, double b) {
    double v = 0.0;
    if (a < 1.0) v += integrate_1d(near0, Interval{std::sqrt(a), std::sqrt(std::min(b, 1.0))}, de).value;
    if (b > 1.0) v += integrate_1d(phi, Interval{std::max(a, 1.0), b}, spec).value;
    return v;
  };
  return {0.5 * (piece(support.lo, u) - piece(u, support.hi)), sg * amp_eps * b_function(x)};
}

Eigen::VectorXd rate_grid() { return Eigen::VectorXd::LinSpaced(13, -4.0, 2.0); }

double kernel_sup_error(const EnsembleKind& kind, int N, const Eigen::VectorXd& xi) {
  const Eigen::MatrixXd K = scaled_edge_kernel_matrix(kind, N, xi);
  double err = 0.0;
  for (Eigen::Index i = 0; i < xi.size(); ++i)
    for (Eigen::Index j = 0; j < xi.size(); ++j) err = std::max(err, std::abs(K(i, j) - airy_kernel(xi(i), xi(j))));
  return err;
}

double loglog_slope(const std::vector<int>& Ns, const std::vector<double>& errs) {
  if (Ns.size() != errs.size() || Ns.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 points");
  const Eigen::Index n = static_cast<Eigen::Index>(Ns.size());
  Eigen::VectorXd lx(n), ly(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(errs[i] > 0.0)) throw std::domain_error("loglog_slope: errors must be > 0");
    lx(i) = std::log(static_cast<double>(Ns[i]));
    ly(i) = std::log(errs[i]);
  }
  const double mx = lx.mean(), my = ly.mean();
  return ((lx.array() - mx) * (ly.array() - my)).sum() / (lx.array() - mx).square().sum();
}

}  // namespace edgestat
