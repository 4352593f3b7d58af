#ifndef EDGESTAT_MCSIM_HPP
#define EDGESTAT_MCSIM_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "edgestat/ensemble.hpp"
#include "edgestat/test_function.hpp"

namespace edgestat {

struct EigenSample {
  EnsembleKind kind;
  int N = 0;
  std::vector<double> eigenvalues;  // ascending
};

struct MomentEstimate {
  double mean = 0.0;
  double variance = 0.0;
  double stderr_mean = 0.0;
  double stderr_var = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
};

struct MgfEstimate {
  double log_mgf = 0.0;
  double stderr = 0.0;  // bootstrap
};

/// Worker count: EDGESTATS_THREADS if set, else hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n) over worker_count() threads.
void parallel_for(long n, const std::function<void(long)>& body);

/// Sample `index` of the stream identified by `seed`.
EigenSample sample_eigenvalues(const EnsembleKind& kind, int N, std::uint64_t seed, std::uint64_t index = 0);

double scaled_statistic(const EigenSample& sample, const TestFunction& F);
double scaled_statistic(const EigenSample& sample, const TestFunction& F, const EdgeScaling& scaling);

/// Sample moments of a vector of statistics.
MomentEstimate moments_of(const std::vector<double>& stats, std::uint64_t seed);

MomentEstimate estimate_moments(const EnsembleKind& kind, int N, const TestFunction& F, long n_samples,
                                std::uint64_t seed);
/// Same with an explicit statistic scaling.
MomentEstimate estimate_moments(const EnsembleKind& kind, int N, const TestFunction& F, long n_samples,
                                std::uint64_t seed, const EdgeScaling& scaling);

/// log of the empirical mean of exp(-lambda * statistic).
double estimate_mgf(const EnsembleKind& kind, int N, const TestFunction& F, double lambda, long n_samples,
                    std::uint64_t seed);
MgfEstimate estimate_mgf_detail(const EnsembleKind& kind, int N, const TestFunction& F, double lambda,
                                long n_samples, std::uint64_t seed);

/// Counts of edge-scaled eigenvalues in equal bins of [lo, hi].
std::vector<long> edge_histogram(const EnsembleKind& kind, int N, long n_samples, std::uint64_t seed, double lo,
                                 double hi, int bins);

/// Per-sample raw moments sum x_j and sum x_j^2 (used by small-N checks).
std::vector<std::pair<double, double>> raw_power_sums(const EnsembleKind& kind, int N, long n_samples,
                                                      std::uint64_t seed);

/// CSV with columns sample_index, eigenvalue_rank, value.
void write_samples_csv(std::ostream& os, const EnsembleKind& kind, int N, long n_samples, std::uint64_t seed);

}  // namespace edgestat

#endif
