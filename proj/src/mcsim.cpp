#include "edgestat/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <random>
#include <stdexcept>
#include <mutex>
#include <thread>

#include <Eigen/Eigenvalues>

#include "edgestat/quad.hpp"
#include "edgestat/report.hpp"

namespace edgestat {

namespace {

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

double chi(std::mt19937_64& g, double k) {
  std::gamma_distribution<double> d(0.5 * k, 2.0);
  return std::sqrt(d(g));
}

void validate_sampler(const EnsembleKind& kind, int N) {
  kind.validate(N);
  if (N < 2) throw std::invalid_argument("sampler: N must be >= 2");
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("EDGESTATS_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(long n, const std::function<void(long)>& body) {
  const int T = static_cast<int>(std::min<long>(worker_count(), std::max<long>(n, 1)));
  if (T <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex m;
  for (int t = 0; t < T; ++t)
    pool.emplace_back([&, t] {
      try {
        for (long i = t; i < n; i += T) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

EigenSample sample_eigenvalues(const EnsembleKind& kind, int N, std::uint64_t seed, std::uint64_t index) {
  validate_sampler(kind, N);
  auto g = substream(seed, index);
  const double beta = kind.beta;
  Eigen::VectorXd diag(N), sub(N - 1);
  double scale;
  if (kind.family == Family::Gaussian) {
    // (1/sqrt2) tridiag(N(0,2); chi_{beta(N-1)}, ..., chi_beta): weight e^{-l^2/2}
    std::normal_distribution<double> normal(0.0, std::sqrt(2.0));
    for (int i = 0; i < N; ++i) diag(i) = normal(g) / std::sqrt(2.0);
    for (int i = 0; i < N - 1; ++i) sub(i) = chi(g, beta * (N - 1 - i)) / std::sqrt(2.0);
    scale = kind.beta == 1 ? 1.0 : 1.0 / std::sqrt(2.0);
  } else {
    // B lower bidiagonal, diag chi_{2a - beta i}, sub chi_{beta(N-1-i)}; BB^T has weight l^{a-p} e^{-l/2}
    double a;
    if (kind.beta == 2)
      a = kind.alpha + N;
    else if (kind.beta == 4)
      a = kind.alpha + 2.0 * N - 1.0;
    else
      a = 0.5 * kind.alpha + 0.5 * (N + 1);
    Eigen::VectorXd d(N), e(N - 1);
    for (int i = 0; i < N; ++i) {
      d(i) = chi(g, 2.0 * a - beta * i);
      if (i < N - 1) e(i) = chi(g, beta * (N - 1 - i));
    }
    for (int i = 0; i < N; ++i) diag(i) = d(i) * d(i) + (i > 0 ? e(i - 1) * e(i - 1) : 0.0);
    for (int i = 0; i < N - 1; ++i) sub(i) = e(i) * d(i);
    scale = kind.beta == 1 ? 1.0 : 0.5;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("tridiagonal eigensolver failed");
  EigenSample s;
  s.kind = kind;
  s.N = N;
  s.eigenvalues.resize(N);
  for (int i = 0; i < N; ++i) s.eigenvalues[i] = scale * es.eigenvalues()(i);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

double scaled_statistic(const EigenSample& sample, const TestFunction& F, const EdgeScaling& scaling) {
  if (F.is_zero()) return 0.0;
  std::vector<double> v(sample.eigenvalues.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = F(scaling.to_edge(sample.eigenvalues[i]));
  return pairwise_sum(v);
}

double scaled_statistic(const EigenSample& sample, const TestFunction& F) {
  return scaled_statistic(sample, F, edge_scaling(sample.kind, sample.N));
}

MomentEstimate moments_of(const std::vector<double>& stats, std::uint64_t seed) {
  MomentEstimate m;
  const long n = static_cast<long>(stats.size());
  m.n_samples = n;
  m.seed = seed;
  if (n == 0) return m;
  m.mean = pairwise_sum(stats) / n;
  std::vector<double> d2(n), d4(n);
  for (long i = 0; i < n; ++i) {
    const double d = stats[i] - m.mean;
    d2[i] = d * d;
    d4[i] = d2[i] * d2[i];
  }
  if (n < 2) return m;
  const double ss = pairwise_sum(d2);
  m.variance = ss / (n - 1);
  const double m4 = pairwise_sum(d4) / n;
  m.stderr_mean = std::sqrt(m.variance / n);
  const double v4 = (m4 - m.variance * m.variance * (n - 3.0) / (n - 1.0)) / n;
  m.stderr_var = std::sqrt(std::max(v4, 0.0));
  if (n < 1000) {
    m.stderr_mean *= 1.5;
    m.stderr_var *= 1.5;
  }
  return m;
}

MomentEstimate estimate_moments(const EnsembleKind& kind, int N, const TestFunction& F, long n_samples,
                                std::uint64_t seed, const EdgeScaling& scaling) {
  validate_sampler(kind, N);
  if (n_samples < 100) throw std::invalid_argument("n_samples must be >= 100");
  std::vector<double> stats(n_samples, 0.0);
  if (!F.is_zero())
    parallel_for(n_samples, [&](long i) {
      stats[i] = scaled_statistic(sample_eigenvalues(kind, N, seed, static_cast<std::uint64_t>(i)), F, scaling);
    });
  return moments_of(stats, seed);
}

MomentEstimate estimate_moments(const EnsembleKind& kind, int N, const TestFunction& F, long n_samples,
                                std::uint64_t seed) {
  return estimate_moments(kind, N, F, n_samples, seed, edge_scaling(kind, N));
}

namespace {

double log_mean_exp(const std::vector<double>& e) {
  const double m = *std::max_element(e.begin(), e.end());
  std::vector<double> t(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) t[i] = std::exp(e[i] - m);
  return m + std::log(pairwise_sum(t) / static_cast<double>(e.size()));
}

}  // namespace

MgfEstimate estimate_mgf_detail(const EnsembleKind& kind, int N, const TestFunction& F, double lambda,
                                long n_samples, std::uint64_t seed) {
  validate_sampler(kind, N);
  if (n_samples < 100) throw std::invalid_argument("n_samples must be >= 100");
  if (std::abs(lambda) * N * F.sup_abs() > 500.0)
    throw std::range_error("estimate_mgf: lambda * worst-case statistic exceeds 500");
  if (lambda == 0.0 || F.is_zero()) return {};
  std::vector<double> e(n_samples);
  const EdgeScaling sc = edge_scaling(kind, N);
  parallel_for(n_samples, [&](long i) {
    e[i] = -lambda * scaled_statistic(sample_eigenvalues(kind, N, seed, static_cast<std::uint64_t>(i)), F, sc);
  });
  MgfEstimate out;
  out.log_mgf = log_mean_exp(e);
  // bootstrap over resampled indices, fixed stream
  auto g = substream(seed ^ 0x9e3779b97f4a7c15ULL, 0xb0075ULL);
  std::uniform_int_distribution<long> pick(0, n_samples - 1);
  const int B = 200;
  std::vector<double> reps(B), r(n_samples);
  for (int b = 0; b < B; ++b) {
    for (long i = 0; i < n_samples; ++i) r[i] = e[pick(g)];
    reps[b] = log_mean_exp(r);
  }
  const double mu = pairwise_sum(reps) / B;
  double ss = 0.0;
  for (double v : reps) ss += (v - mu) * (v - mu);
  out.stderr = std::sqrt(ss / (B - 1));
  return out;
}

double estimate_mgf(const EnsembleKind& kind, int N, const TestFunction& F, double lambda, long n_samples,
                    std::uint64_t seed) {
  if (std::abs(lambda) * N * F.sup_abs() > 500.0)
    throw std::range_error("estimate_mgf: lambda * worst-case statistic exceeds 500");
  if (lambda == 0.0 || F.is_zero()) {
    validate_sampler(kind, N);
    return 0.0;
  }
  validate_sampler(kind, N);
  if (n_samples < 100) throw std::invalid_argument("n_samples must be >= 100");
  std::vector<double> e(n_samples);
  const EdgeScaling sc = edge_scaling(kind, N);
  parallel_for(n_samples, [&](long i) {
    e[i] = -lambda * scaled_statistic(sample_eigenvalues(kind, N, seed, static_cast<std::uint64_t>(i)), F, sc);
  });
  return log_mean_exp(e);
}

std::vector<long> edge_histogram(const EnsembleKind& kind, int N, long n_samples, std::uint64_t seed, double lo,
                                 double hi, int bins) {
  validate_sampler(kind, N);
  if (!(lo < hi) || bins < 1) throw std::invalid_argument("edge_histogram: bad bins");
  const EdgeScaling sc = edge_scaling(kind, N);
  std::vector<std::vector<long>> per(n_samples);
  parallel_for(n_samples, [&](long i) {
    const auto s = sample_eigenvalues(kind, N, seed, static_cast<std::uint64_t>(i));
    std::vector<long> c(bins, 0);
    for (double x : s.eigenvalues) {
      const double xi = sc.to_edge(x);
      if (xi < lo || xi >= hi) continue;
      const int b = std::min(bins - 1, static_cast<int>((xi - lo) / (hi - lo) * bins));
      ++c[b];
    }
    per[i] = std::move(c);
  });
  std::vector<long> out(bins, 0);
  for (const auto& c : per)
    for (int b = 0; b < bins; ++b) out[b] += c[b];
  return out;
}

std::vector<std::pair<double, double>> raw_power_sums(const EnsembleKind& kind, int N, long n_samples,
                                                      std::uint64_t seed) {
  std::vector<std::pair<double, double>> out(n_samples);
  parallel_for(n_samples, [&](long i) {
    const auto s = sample_eigenvalues(kind, N, seed, static_cast<std::uint64_t>(i));
    double a = 0.0, b = 0.0;
    for (double x : s.eigenvalues) {
      a += x;
      b += x * x;
    }
    out[i] = {a, b};
  });
  return out;
}

void write_samples_csv(std::ostream& os, const EnsembleKind& kind, int N, long n_samples, std::uint64_t seed) {
  validate_sampler(kind, N);
  CsvWriter w(os);
  w.row({"sample_index", "eigenvalue_rank", "value"});
  for (long i = 0; i < n_samples; ++i) {
    const auto s = sample_eigenvalues(kind, N, seed, static_cast<std::uint64_t>(i));
    for (int r = 0; r < N; ++r) w.row({std::to_string(i), std::to_string(r), format_double(s.eigenvalues[r])});
  }
}

}  // namespace edgestat
