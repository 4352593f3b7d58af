#include <cmath>
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "edgestat/mcsim.hpp"
#include "edgestat/quad.hpp"
#include "edgestat/report.hpp"

using namespace edgestat;

namespace {

struct Raw {
  double m1 = 0, m2 = 0, se1 = 0, se2 = 0;
};

Raw raw_means(const EnsembleKind& k, int N, long n, std::uint64_t seed) {
  const auto v = raw_power_sums(k, N, n, seed);
  Raw r;
  double q1 = 0, q2 = 0;
  for (const auto& [a, b] : v) {
    r.m1 += a;
    r.m2 += b;
    q1 += a * a;
    q2 += b * b;
  }
  r.m1 /= n;
  r.m2 /= n;
  r.se1 = std::sqrt((q1 / n - r.m1 * r.m1) / n);
  r.se2 = std::sqrt((q2 / n - r.m2 * r.m2) / n);
  return r;
}

// E[x1 + x2] and E[x1^2 + x2^2] for the two-point density (x1 - x2)^2 w(x1) w(x2)
template <class W>
std::pair<double, double> two_point(W w, Interval d) {
  QuadratureSpec s;
  s.left_cut = d.lo;
  s.right_cut = d.hi;
  s.abs_tol = 1e-11;
  s.rel_tol = 1e-10;
  auto dens = [&](double x, double y) { return (x - y) * (x - y) * w(x) * w(y); };
  const double z = integrate_2d(dens, d, d, s).value;
  const double a = integrate_2d([&](double x, double y) { return (x + y) * dens(x, y); }, d, d, s).value;
  const double b = integrate_2d([&](double x, double y) { return (x * x + y * y) * dens(x, y); }, d, d, s).value;
  return {a / z, b / z};
}

}  // namespace

TEST_CASE("GUE N=2 against the joint density") {
  const auto [m1, m2] = two_point([](double x) { return std::exp(-x * x); }, Interval{-9, 9});
  CHECK(m1 == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(m2 == doctest::Approx(2.0).epsilon(1e-8));
  const Raw r = raw_means(EnsembleKind::gue(), 2, 200000, 7);
  CHECK(std::abs(r.m1 - m1) < 4 * r.se1);
  CHECK(std::abs(r.m2 - m2) < 4 * r.se2);
}

TEST_CASE("LUE N=2 against the joint density") {
  for (double alpha : {0.0, 1.0}) {
    CAPTURE(alpha);
    const auto [m1, m2] = two_point([&](double x) { return std::pow(x, alpha) * std::exp(-x); }, Interval{0, 60});
    const Raw r = raw_means(EnsembleKind::lue(alpha), 2, 200000, 11);
    CHECK(std::abs(r.m1 - m1) < 4 * r.se1);
    CHECK(std::abs(r.m2 - m2) < 4 * r.se2);
  }
}

TEST_CASE("Laguerre eigenvalues are positive and sorted") {
  for (auto k : {EnsembleKind::lue(0.0), EnsembleKind::lse(0.5), EnsembleKind::loe(0.0)}) {
    const auto s = sample_eigenvalues(k, 10, 3, 5);
    CHECK(s.eigenvalues.size() == 10);
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      CHECK(s.eigenvalues[i] > 0.0);
      if (i) CHECK(s.eigenvalues[i] >= s.eigenvalues[i - 1]);
    }
  }
}

TEST_CASE("determinism and thread independence") {
  const auto F = TestFunction::gauss(1, 0);
  const auto a = estimate_moments(EnsembleKind::gue(), 50, F, 500, 99);
  const auto b = estimate_moments(EnsembleKind::gue(), 50, F, 500, 99);
  CHECK(a.mean == b.mean);
  CHECK(a.variance == b.variance);
  setenv("EDGESTATS_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  const auto c = estimate_moments(EnsembleKind::gue(), 50, F, 500, 99);
  setenv("EDGESTATS_THREADS", "3", 1);
  const auto d = estimate_moments(EnsembleKind::gue(), 50, F, 500, 99);
  unsetenv("EDGESTATS_THREADS");
  CHECK(c.mean == a.mean);
  CHECK(d.variance == a.variance);
  CHECK(estimate_moments(EnsembleKind::gue(), 50, F, 500, 100).mean != a.mean);
}

TEST_CASE("zero statistic") {
  const auto r = estimate_moments(EnsembleKind::goe(), 20, TestFunction::zero(), 200, 1);
  CHECK(r.mean == 0.0);
  CHECK(r.variance == 0.0);
  CHECK(estimate_mgf(EnsembleKind::goe(), 20, TestFunction::zero(), 1.0, 200, 1) == 0.0);
}

TEST_CASE("single eigenvalue at the edge") {
  const auto F = TestFunction::gauss(1, 0);
  for (auto k : {EnsembleKind::gue(), EnsembleKind::lue(2.0)}) {
    const EdgeScaling s = edge_scaling(k, 100);
    EigenSample e{k, 100, {s.from_edge(0.0)}};
    CHECK(scaled_statistic(e, F) == doctest::Approx(1.0).epsilon(1e-12));
    e.eigenvalues = {s.from_edge(-1.0), s.from_edge(0.5)};
    CHECK(scaled_statistic(e, F) == doctest::Approx(std::exp(-1.0) + std::exp(-0.25)).epsilon(1e-12));
  }
}

TEST_CASE("validation") {
  const auto F = TestFunction::gauss(1, 0);
  CHECK_THROWS_AS(sample_eigenvalues(EnsembleKind::gue(), 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_moments(EnsembleKind::gue(), 10, F, 99, 0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_moments(EnsembleKind::lse(0.0), 10, F, 200, 0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_moments(EnsembleKind::goe(), 11, F, 200, 0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_mgf(EnsembleKind::gue(), 100, F, 6.0, 200, 0), std::range_error);
  CHECK_THROWS_AS(edge_histogram(EnsembleKind::gue(), 10, 200, 0, 1, 0, 5), std::invalid_argument);
}

TEST_CASE("sample export") {
  std::ostringstream os;
  write_samples_csv(os, EnsembleKind::gue(), 4, 3, 5);
  const auto rows = parse_csv(os.str());
  REQUIRE(rows.size() == 13);
  CHECK(rows[0] == std::vector<std::string>{"sample_index", "eigenvalue_rank", "value"});
  const auto s = sample_eigenvalues(EnsembleKind::gue(), 4, 5, 2);
  CHECK(std::stod(rows[12][2]) == s.eigenvalues[3]);
}

TEST_CASE("small lambda mgf follows the sample cumulants") {
  const auto F = TestFunction::gauss(1, 0);
  const auto m = estimate_moments(EnsembleKind::gue(), 40, F, 4000, 21);
  const double l = 1e-3;
  const double lm = estimate_mgf(EnsembleKind::gue(), 40, F, l, 4000, 21);
  CHECK(std::abs(lm - (-l * m.mean + 0.5 * l * l * m.variance)) < 1e-8);
  const auto d = estimate_mgf_detail(EnsembleKind::gue(), 40, F, 0.5, 4000, 21);
  CHECK(d.stderr > 0.0);
  CHECK(d.log_mgf == estimate_mgf(EnsembleKind::gue(), 40, F, 0.5, 4000, 21));
}

TEST_CASE("moments_of") {
  std::vector<double> x;
  for (int i = 0; i < 1000; ++i) x.push_back(i % 2 ? 1.0 : -1.0);
  const auto r = moments_of(x, 3);
  CHECK(r.mean == doctest::Approx(0.0));
  CHECK(r.variance == doctest::Approx(1000.0 / 999.0));
  CHECK(r.stderr_mean == doctest::Approx(std::sqrt(r.variance / 1000)));
  CHECK(r.n_samples == 1000);
}
