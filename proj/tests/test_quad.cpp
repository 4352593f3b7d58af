#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "edgestat/kernel.hpp"
#include "edgestat/quad.hpp"
#include "edgestat/specfun.hpp"

using namespace edgestat;

namespace {
const double kSqrtPi = std::sqrt(std::numbers::pi);

QuadratureSpec de_spec() {
  QuadratureSpec s;
  s.rule = Rule::DoubleExponential;
  return s;
}
}  // namespace

TEST_CASE("spec validation") {
  QuadratureSpec s;
  CHECK_NOTHROW(s.validate());
  s.nodes_per_panel = 3;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.abs_tol = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.left_cut = 1.0;
  s.right_cut = 1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("1d examples, both rules") {
  for (const QuadratureSpec& s : {QuadratureSpec{}, de_spec()}) {
    CAPTURE(static_cast<int>(s.rule));
    CHECK(std::abs(integrate_1d([](double x) { return std::exp(-x * x); }, Interval{-kInf, kInf}, s).value - kSqrtPi) <
          1e-10);
    CHECK(std::abs(integrate_1d([](double x) { return std::sqrt(x) * std::exp(-x); }, Interval{0.0, kInf}, s).value -
                   kSqrtPi / 2) < 1e-9);
  }
  QuadratureSpec s;
  s.right_cut = 40.0;
  CHECK(std::abs(integrate_1d(airy_ai, Interval{0.0, kInf}, s).value - 1.0 / 3.0) < 1e-9);
  CHECK(std::abs(integrate_1d(airy_ai, Interval{0.0, kInf}, de_spec()).value - 1.0 / 3.0) < 1e-9);
}

TEST_CASE("result metadata and reversed bounds") {
  auto r = integrate_1d([](double x) { return x * x; }, Interval{0.0, 1.0}, QuadratureSpec{});
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(r.err_estimate >= 0.0);
  CHECK(r.panels_used >= 1);
  auto rr = integrate_1d([](double x) { return x * x; }, Interval{1.0, 0.0}, QuadratureSpec{});
  CHECK(rr.value == -r.value);
}

TEST_CASE("nonconvergence carries best estimate") {
  QuadratureSpec s;
  s.max_level = 1;
  s.abs_tol = 1e-15;
  s.rel_tol = 1e-15;
  try {
    integrate_1d([](double x) { return std::sin(200.0 * x); }, Interval{0.0, 10.0}, s);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.best().panels_used > 0);
  }
}

TEST_CASE("determinism") {
  auto f = [](double x) { return std::exp(-x * x) * std::cos(3 * x); };
  auto a = integrate_1d(f, Interval{-kInf, kInf}, QuadratureSpec{});
  auto b = integrate_1d(f, Interval{-kInf, kInf}, QuadratureSpec{});
  CHECK(a.value == b.value);
  CHECK(a.err_estimate == b.err_estimate);
  CHECK(a.panels_used == b.panels_used);
}

TEST_CASE("refinement monotonicity on the example set") {
  struct Ex {
    double (*f)(double);
    Interval d;
    double exact;
  };
  const Ex set[] = {
      {[](double x) { return std::exp(-x * x); }, {-kInf, kInf}, kSqrtPi},
      {[](double x) { return std::sqrt(x) * std::exp(-x); }, {0.0, kInf}, kSqrtPi / 2},
      {airy_ai, {0.0, kInf}, 1.0 / 3.0},
  };
  for (Rule rule : {Rule::GaussLegendre, Rule::DoubleExponential})
    for (const auto& e : set) {
      double prev_err = kInf;
      for (double tol : {1e-6, 1e-8, 1e-10, 1e-12}) {
        QuadratureSpec s;
        s.rule = rule;
        s.abs_tol = tol;
        s.rel_tol = tol;
        const double err = std::abs(integrate_1d(e.f, e.d, s).value - e.exact);
        // rounding floor of the node sums
        CHECK(err <= std::max(prev_err, 64 * std::numeric_limits<double>::epsilon() * std::abs(e.exact)));
        prev_err = err;
      }
    }
}

TEST_CASE("infinite domain equals split halves") {
  auto f = [](double x) { return std::exp(-0.5 * x * x) * (1 + x * x * x); };
  for (const QuadratureSpec& s : {QuadratureSpec{}, de_spec()}) {
    const double whole = integrate_1d(f, Interval{-kInf, kInf}, s).value;
    const double split =
        integrate_1d(f, Interval{-kInf, 0.0}, s).value + integrate_1d(f, Interval{0.0, kInf}, s).value;
    CHECK(std::abs(whole - split) < 2e-10);
    CHECK(std::abs(whole - std::sqrt(2 * std::numbers::pi)) < 1e-10);
  }
}

TEST_CASE("2d examples") {
  QuadratureSpec s;
  s.left_cut = -8;
  s.right_cut = 8;
  s.abs_tol = 1e-10;
  s.rel_tol = 1e-10;
  const Interval R{-kInf, kInf};
  CHECK(std::abs(integrate_2d([](double x, double y) { return std::exp(-x * x - y * y); }, R, R, s).value -
                 std::numbers::pi) < 1e-8);

  auto g = [](double x) { return std::exp(-x * x) * (1 + x); };
  auto h = [](double y) { return std::exp(-2 * y * y) * std::cos(y); };
  const double sep = integrate_2d([&](double x, double y) { return g(x) * h(y); }, R, R, s).value;
  const double prod = integrate_1d(g, R, s).value * integrate_1d(h, R, s).value;
  CHECK(std::abs(sep - prod) < 1e-10);

  auto kk = [](double x, double y) {
    const double k = airy_kernel(x, y);
    return k * k * std::exp(-x * x - y * y);
  };
  QuadratureSpec s2 = s;
  s2.left_cut = -7;
  s2.right_cut = 7;
  s2.abs_tol = 1e-9;
  s2.rel_tol = 1e-9;
  const double tensor = integrate_2d(kk, R, R, s2).value;
  const double iterated =
      integrate_1d([&](double x) { return integrate_1d([&](double y) { return kk(x, y); }, R, s2).value; }, R, s2)
          .value;
  CHECK(std::abs(tensor - iterated) < 1e-7);
}

TEST_CASE("sign-weighted 2d") {
  QuadratureSpec s;
  s.left_cut = -8;
  s.right_cut = 8;
  s.abs_tol = 1e-10;
  s.rel_tol = 1e-10;
  const Interval R{-kInf, kInf};
  auto sym = [](double x, double y) { return std::exp(-x * x - y * y) * (1 + x * y); };
  CHECK(std::abs(sign_weighted_2d(sym, R, s).value) < 1e-9);

  auto fy = [](double x, double y) { return std::exp(-x * x - y * y) * y; };
  const double v = sign_weighted_2d(fy, R, s).value;
  // independent triangle oracle: y > x minus y < x, each by nested 1d rules
  QuadratureSpec de = de_spec();
  const double upper = integrate_1d(
      [&](double x) { return integrate_1d([&](double y) { return fy(x, y); }, Interval{x, kInf}, de).value; }, R, de)
                           .value;
  const double lower = integrate_1d(
      [&](double x) { return integrate_1d([&](double y) { return fy(x, y); }, Interval{-kInf, x}, de).value; }, R, de)
                           .value;
  CHECK(std::abs(v - (upper - lower)) < 1e-8);
  // closed form: pi / sqrt(2) / sqrt(pi) * ... = sqrt(pi/2)
  CHECK(std::abs(v - std::sqrt(std::numbers::pi / 2)) < 1e-8);

  // support inside {y > x + 1}
  auto band = [](double x, double y) {
    const double t = y - x - 1.0;
    return t > 0 ? std::pow(t, 8) * std::exp(-x * x - y * y) : 0.0;
  };
  QuadratureSpec sb = s;
  sb.max_level = 10;
  const double sw = sign_weighted_2d(band, R, sb).value;
  const double plain = integrate_2d(band, R, R, sb).value;
  CHECK(std::abs(sw - plain) < 1e-10);
}

TEST_CASE("pairwise sum is order-fixed") {
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (1.0 + i);
  CHECK(pairwise_sum(v) == pairwise_sum(v));
  double naive = 0;
  for (double x : v) naive += x;
  CHECK(pairwise_sum(v) == doctest::Approx(naive).epsilon(1e-14));
}
