#ifndef EDGESTAT_WAVEFUNCTIONS_HPP
#define EDGESTAT_WAVEFUNCTIONS_HPP

#include <Eigen/Core>

namespace edgestat {

/// Orthonormal Hermite function phi_j(x) = H_j(x) e^{-x^2/2} / (pi^{1/4} 2^{j/2} sqrt(j!)).
double phi_hermite(int j, double x);

/// Orthonormal Laguerre function sqrt(j!/Gamma(j+a+1)) L_j^{(a)}(x) x^{a/2} e^{-x/2}.
double phi_laguerre(int j, double alpha, double x);

/// phi_n, phi_{n-1}, phi_{n-2} (zero where the index is negative).
struct WaveTriple {
  double top = 0.0;
  double prev = 0.0;
  double prev2 = 0.0;
};

WaveTriple hermite_triple(int n, double x);
WaveTriple laguerre_triple(int n, double alpha, double x);

/// sum_{j<n} phi_j(x) phi_j(y), summed directly.
double hermite_direct_sum(int n, double x, double y);
double laguerre_direct_sum(int n, double alpha, double x, double y);

/// phi_0(x), ..., phi_{n-1}(x).
Eigen::VectorXd hermite_all(int n, double x);
Eigen::VectorXd laguerre_all(int n, double alpha, double x);

}  // namespace edgestat

#endif
