#ifndef EDGESTAT_KERNEL_HPP
#define EDGESTAT_KERNEL_HPP

#include <functional>
#include <vector>

#include "edgestat/ensemble.hpp"
#include "edgestat/specfun.hpp"
#include "edgestat/quad.hpp"
#include "edgestat/wavefunctions.hpp"

namespace edgestat {

/// Branch threshold for the near-diagonal Taylor forms.
constexpr double kDiagonalDelta = 1e-4;

/// Airy kernel [Ai(x)Ai'(y) - Ai(y)Ai'(x)] / (x - y).
double airy_kernel(double x, double y);
/// Same, from precomputed Ai, Ai' at both points.
double airy_kernel(double x, double ax, double apx, double y, double ay, double apy);
/// int_0^inf Ai(x+t) Ai(y+t) dt; throws QuadratureError.
double airy_kernel_factorized(double x, double y);
/// L(x,y) = -int_0^inf Ai(y+t) B(x+t) dt; throws QuadratureError.
double l_function(double x, double y);

/// Christoffel-Darboux kernels, sum_{j<N} phi_j(x) phi_j(y).
double cd_kernel_hermite(int N, double x, double y);
double cd_kernel_laguerre(int N, double alpha, double x, double y);
/// Same, reusing wavefunction triples at x and y.
double cd_kernel_hermite(int N, double x, const WaveTriple& tx, double y, const WaveTriple& ty);
double cd_kernel_laguerre(int N, double alpha, double x, const WaveTriple& tx, double y, const WaveTriple& ty);

/// S_N^{(4)}(x,y) = sum_{j=0}^{2N} x phi_j^{(alpha-1)}(x) phi_j^{(alpha-1)}(y), phi^{(a)} = psi^{(a)} / sqrt(x).
double s_kernel_lse(int N, double alpha, double x, double y);
/// S_N^{(1)}(x,y) = sum_{j<N} x phi_j^{(alpha+1)}(x) phi_j^{(alpha+1)}(y). N even.
double s_kernel_loe(int N, double alpha, double x, double y);

/// (eps phi)(x) = 1/2 (int_{-inf}^x phi - int_x^inf phi); phi negligible outside `support`.
double eps_transform(const std::function<double(double)>& phi, double x, const Interval& support,
                     const QuadratureSpec& spec = QuadratureSpec{});

/// Finite-N kernel in edge coordinates, converging to airy_kernel.
double scaled_edge_kernel(const EnsembleKind& kind, int N, double x, double y);

/// [scaled_edge_kernel(xi_i, xi_j)]; LSE/LOE rows are not symmetric.
Eigen::MatrixXd scaled_edge_kernel_matrix(const EnsembleKind& kind, int N, const Eigen::VectorXd& xi);

/// Default grid for sup-error rate studies: 13 points on [-4, 2].
Eigen::VectorXd rate_grid();

/// max over xi x xi of |scaled_edge_kernel - airy_kernel|.
double kernel_sup_error(const EnsembleKind& kind, int N, const Eigen::VectorXd& xi);

/// Least-squares slope of log(err) against log(N).
double loglog_slope(const std::vector<int>& Ns, const std::vector<double>& errs);

enum class WaveKind { PhiTop, PhiNext, EpsTop, EpsNext };

struct EdgeLimit {
  double value;
  double predicted_limit;
};

/// Finite-N edge wavefunction (or its eps transform) next to the stated limit.
/// Defined for GSE, GOE, LSE, LOE.
EdgeLimit edge_wavefunction_limit(const EnsembleKind& kind, WaveKind which, int N, double x);

}  // namespace edgestat

#endif
