#ifndef EDGESTAT_BWASYM_HPP
#define EDGESTAT_BWASYM_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "edgestat/fredholm.hpp"
#include "edgestat/quad.hpp"
#include "edgestat/test_function.hpp"

namespace edgestat {

struct BWResult {
  double c1 = 0.0;
  double c2 = 0.0;
  double gamma = 0.0;
  double logdet_prediction = 0.0;
};

/// 1 + f(-x) <= 0 at some node.
class LogDomainError : public std::domain_error {
 public:
  LogDomainError(const std::string& what, double where) : std::domain_error(what), where_(where) {}
  double where() const { return where_; }

 private:
  double where_;
};

/// Cosine integrals switch to Filon panels above this frequency.
inline constexpr double kFilonThreshold = 5.0;
/// Upper cut of the c2 integral.
inline constexpr double kC2Cut = 40.0;

QuadratureSpec bw_quadrature_spec();

double bw_c1(const TestFunction& F, double lambda, const QuadratureSpec& spec = bw_quadrature_spec());
double bw_G(const TestFunction& F, double lambda, double x, const QuadratureSpec& spec = bw_quadrature_spec());
double bw_c2(const TestFunction& F, double lambda, const QuadratureSpec& spec = bw_quadrature_spec());
BWResult bw_predict(const TestFunction& F, double lambda, double gamma,
                    const QuadratureSpec& spec = bw_quadrature_spec());

/// log det(I + K_Airy f(./gamma)) with f = exp(-lambda F) - 1.
double bw_logdet(const TestFunction& F, double lambda, double gamma, int per_panel = 20);

struct BWRegression {
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<double> residuals;
};

/// Least squares of logdet against (gamma^{3/2}, 1).
BWRegression bw_regress(const std::vector<double>& gammas, const std::vector<double>& logdets);

double shift_mean(const TestFunction& F, int N, const QuadratureSpec& spec = bw_quadrature_spec());
double shift_variance(const TestFunction& F, const QuadratureSpec& spec = bw_quadrature_spec());

double coulomb_s1(const TestFunction& F, double lambda, const QuadratureSpec& spec = bw_quadrature_spec());
/// Finite-N S1 through the Chebyshev expansion of F(x - sqrt(2N)) on the semicircle support.
double coulomb_s1_finite(const TestFunction& F, double lambda, int N);
double coulomb_s2(const TestFunction& F, double lambda, int N, const QuadratureSpec& spec = bw_quadrature_spec());
/// (lambda/pi) int sqrt(2N - x^2) F(x - sqrt(2N)) dx over the full support.
double coulomb_s2_finite(const TestFunction& F, double lambda, int N,
                         const QuadratureSpec& spec = bw_quadrature_spec());

/// int_a^b g(y) cos(t y) dy by Filon-Simpson with 2n intervals.
double filon_cos(const std::vector<double>& g, double a, double b, double t);

}  // namespace edgestat

#endif
