#include "edgestat/bwasym.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Dense>

namespace edgestat {

namespace {

constexpr double kPi = std::numbers::pi;

using Profile = std::function<double(double)>;

void check_lambda(double lambda) {
  if (!std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite");
}

// log(1 + f(-u)) with f = exp(-lambda F) - 1
Profile log_profile(const TestFunction& F, double lambda) {
  return [F, lambda](double u) {
    const double one_plus_f = 1.0 + std::expm1(-lambda * F(-u));
    if (!(one_plus_f > 0.0)) throw LogDomainError("1 + f(-x) <= 0", u);
    return std::log1p(std::expm1(-lambda * F(-u)));
  };
}

Profile plain_profile(const TestFunction& F) {
  return [F](double u) { return F(-u); };
}

// u-range on which F(-u) is non-negligible
double u_extent(const TestFunction& F) {
  const Interval s = F.effective_support();
  return std::max(0.0, -s.lo);
}

double sqrt_moment(const Profile& g, double U, const QuadratureSpec& spec) {
  if (U <= 0.0) return 0.0;
  QuadratureSpec de = spec;
  de.rule = Rule::DoubleExponential;
  return integrate_1d([&](double u) { return std::sqrt(u) * g(u); }, Interval{0.0, U}, de).value;
}

// (1/pi) int_0^Y cos(x y) g(y^2) dy with a cached uniform sample of g(y^2)
class CosineTransform {
 public:
  CosineTransform(Profile g, double U, const QuadratureSpec& spec)
      : g_(std::move(g)), Y_(std::sqrt(U)), spec_(spec) {}

  double operator()(double x) {
    x = std::abs(x);
    if (Y_ <= 0.0) return 0.0;
    if (x <= kFilonThreshold) {
      return integrate_1d([&](double y) { return std::cos(x * y) * g_(y * y); }, Interval{0.0, Y_}, spec_).value /
             kPi;
    }
    double prev = 0.0;
    for (int k = 0; k < static_cast<int>(levels_.size()) || k <= kMaxLevel; ++k) {
      const auto& s = samples(k);
      const double cur = filon_cos(s, 0.0, Y_, x);
      if (k > 0 && std::abs(cur - prev) <= std::max(spec_.abs_tol, spec_.rel_tol * std::abs(cur))) return cur / kPi;
      prev = cur;
      if (k == kMaxLevel) break;
    }
    throw QuadratureError("Filon cosine transform: tolerance not met", QuadResult{prev / kPi, 0.0, 0});
  }

 private:
  static constexpr int kMaxLevel = 9;

  const std::vector<double>& samples(int k) {
    while (static_cast<int>(levels_.size()) <= k) {
      const int n = 128 << levels_.size();
      std::vector<double> s(2 * n + 1);
      for (int i = 0; i <= 2 * n; ++i) {
        const double y = Y_ * i / (2.0 * n);
        s[i] = g_(y * y);
      }
      levels_.push_back(std::move(s));
    }
    return levels_[k];
  }

  Profile g_;
  double Y_;
  QuadratureSpec spec_;
  std::vector<std::vector<double>> levels_;
};

// 1/2 int_0^cut x T(x)^2 dx
double half_x_square_integral(CosineTransform& T, const QuadratureSpec& spec) {
  QuadratureSpec gl = spec;
  gl.rule = Rule::GaussLegendre;
  const double body = integrate_1d([&](double x) { return x * std::pow(T(x), 2); }, Interval{0.0, kC2Cut}, gl).value;
  const double tail =
      integrate_1d([&](double x) { return x * std::pow(T(x), 2); }, Interval{kC2Cut - 4.0, kC2Cut}, gl).value;
  if (std::abs(tail) > std::max(spec.abs_tol, spec.rel_tol * std::abs(body)))
    throw QuadratureError("cosine transform decays too slowly for the cut", QuadResult{0.5 * body, tail, 0});
  return 0.5 * body;
}

}  // namespace

QuadratureSpec bw_quadrature_spec() {
  QuadratureSpec s;
  s.nodes_per_panel = 16;
  s.abs_tol = 1e-14;
  s.rel_tol = 1e-12;
  s.max_level = 8;
  return s;
}

double filon_cos(const std::vector<double>& g, double a, double b, double t) {
  const int m = static_cast<int>(g.size()) - 1;
  if (m < 2 || m % 2) throw std::invalid_argument("filon_cos: need an even number of intervals");
  const double h = (b - a) / m;
  const double th = t * h;
  double al, be, ga;
  if (std::abs(th) < 1.0 / 6.0) {
    const double t2 = th * th, t3 = t2 * th, t4 = t2 * t2, t5 = t4 * th, t6 = t4 * t2, t7 = t6 * th;
    al = 2.0 * t3 / 45.0 - 2.0 * t5 / 315.0 + 2.0 * t7 / 4725.0;
    be = 2.0 / 3.0 + 2.0 * t2 / 15.0 - 4.0 * t4 / 105.0 + 2.0 * t6 / 567.0;
    ga = 4.0 / 3.0 - 2.0 * t2 / 15.0 + t4 / 210.0 - t6 / 11340.0;
  } else {
    const double s = std::sin(th), c = std::cos(th), t3 = th * th * th;
    al = (th * th + th * s * c - 2.0 * s * s) / t3;
    be = 2.0 * (th * (1.0 + c * c) - 2.0 * s * c) / t3;
    ga = 4.0 * (s - th * c) / t3;
  }
  std::vector<double> ev, od;
  ev.reserve(m / 2 + 1);
  od.reserve(m / 2);
  for (int i = 0; i <= m; ++i) {
    const double v = g[i] * std::cos(t * (a + i * h));
    if (i % 2) {
      od.push_back(v);
    } else {
      ev.push_back((i == 0 || i == m) ? 0.5 * v : v);
    }
  }
  return h * (al * (g[m] * std::sin(t * b) - g[0] * std::sin(t * a)) + be * pairwise_sum(ev) + ga * pairwise_sum(od));
}

double bw_c1(const TestFunction& F, double lambda, const QuadratureSpec& spec) {
  check_lambda(lambda);
  if (lambda == 0.0 || F.is_zero()) return 0.0;
  return sqrt_moment(log_profile(F, lambda), u_extent(F), spec) / kPi;
}

double bw_G(const TestFunction& F, double lambda, double x, const QuadratureSpec& spec) {
  check_lambda(lambda);
  if (lambda == 0.0 || F.is_zero()) return 0.0;
  CosineTransform T(log_profile(F, lambda), u_extent(F), spec);
  return T(x);
}

double bw_c2(const TestFunction& F, double lambda, const QuadratureSpec& spec) {
  check_lambda(lambda);
  if (lambda == 0.0 || F.is_zero()) return 0.0;
  CosineTransform T(log_profile(F, lambda), u_extent(F), spec);
  return half_x_square_integral(T, spec);
}

BWResult bw_predict(const TestFunction& F, double lambda, double gamma, const QuadratureSpec& spec) {
  BWResult r;
  r.c1 = bw_c1(F, lambda, spec);
  r.c2 = bw_c2(F, lambda, spec);
  r.gamma = gamma;
  r.logdet_prediction = r.c1 * std::pow(gamma, 1.5) + r.c2;
  return r;
}

double bw_logdet(const TestFunction& F, double lambda, double gamma, int per_panel) {
  check_lambda(lambda);
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (lambda == 0.0 || F.is_zero()) return 0.0;
  const Interval s = F.effective_support();
  const double lo = gamma * s.lo;
  const double hi = gamma * s.hi;
  if (!(lo < hi)) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(hi - lo)));
  auto fhat = [F, lambda, gamma](double x) {
    const double v = std::expm1(-lambda * F(x / gamma));
    if (!(v > -1.0)) throw LogDomainError("1 + f(-x) <= 0", -x / gamma);
    return v;
  };
  return logdet_airy(fhat, NystromGrid::gauss_legendre(lo, hi, panels, per_panel));
}

BWRegression bw_regress(const std::vector<double>& gammas, const std::vector<double>& logdets) {
  if (gammas.size() != logdets.size() || gammas.size() < 2)
    throw std::invalid_argument("bw_regress: need at least two matching points");
  const Eigen::Index n = static_cast<Eigen::Index>(gammas.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, 0) = std::pow(gammas[i], 1.5);
    A(i, 1) = 1.0;
    b(i) = logdets[i];
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
  BWRegression r;
  r.c1 = c(0);
  r.c2 = c(1);
  const Eigen::VectorXd res = b - A * c;
  r.residuals.assign(res.data(), res.data() + n);
  return r;
}

double shift_mean(const TestFunction& F, int N, const QuadratureSpec& spec) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (F.is_zero()) return 0.0;
  return std::pow(2.0, 0.75) * std::pow(static_cast<double>(N), 0.25) / kPi *
         sqrt_moment(plain_profile(F), u_extent(F), spec);
}

double shift_variance(const TestFunction& F, const QuadratureSpec& spec) {
  if (F.is_zero()) return 0.0;
  CosineTransform T(plain_profile(F), u_extent(F), spec);
  return 2.0 * half_x_square_integral(T, spec);
}

double coulomb_s1(const TestFunction& F, double lambda, const QuadratureSpec& spec) {
  check_lambda(lambda);
  if (lambda == 0.0) return 0.0;
  return -0.5 * lambda * lambda * shift_variance(F, spec);
}

double coulomb_s2(const TestFunction& F, double lambda, int N, const QuadratureSpec& spec) {
  check_lambda(lambda);
  if (lambda == 0.0) return 0.0;
  return lambda * shift_mean(F, N, spec);
}

double coulomb_s1_finite(const TestFunction& F, double lambda, int N) {
  check_lambda(lambda);
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (lambda == 0.0 || F.is_zero()) return 0.0;
  // F(b cos th - b) = sum a_k cos(k th); variance = 1/4 sum k a_k^2
  const double b = std::sqrt(2.0 * N);
  const int M = 512 * static_cast<int>(std::ceil(std::sqrt(b)));
  std::vector<double> f(M + 1);
  for (int j = 0; j <= M; ++j) f[j] = F(b * std::cos(kPi * j / M) - b);
  double var = 0.0;
  std::vector<double> t(M + 1);
  for (int k = 1; k < M; ++k) {
    for (int j = 0; j <= M; ++j) {
      const double w = (j == 0 || j == M) ? 0.5 : 1.0;
      t[j] = w * f[j] * std::cos(kPi * static_cast<double>(k) * j / M);
    }
    const double ak = 2.0 / M * pairwise_sum(t);
    var += 0.25 * k * ak * ak;
  }
  return -0.5 * lambda * lambda * var;
}

double coulomb_s2_finite(const TestFunction& F, double lambda, int N, const QuadratureSpec& spec) {
  check_lambda(lambda);
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (lambda == 0.0 || F.is_zero()) return 0.0;
  const double b = std::sqrt(2.0 * N);
  const double U = std::min(2.0 * b, u_extent(F));
  QuadratureSpec de = spec;
  de.rule = Rule::DoubleExponential;
  const double v =
      integrate_1d([&](double u) { return std::sqrt(u * (2.0 * b - u)) * F(-u); }, Interval{0.0, U}, de).value;
  return lambda / kPi * v;
}

}  // namespace edgestat
