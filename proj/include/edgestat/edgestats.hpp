#ifndef EDGESTAT_EDGESTATS_HPP
#define EDGESTAT_EDGESTATS_HPP

#include <map>
#include <string>
#include <vector>

#include "edgestat/ensemble.hpp"
#include "edgestat/quad.hpp"
#include "edgestat/test_function.hpp"

namespace edgestat {

struct Rational {
  long num;
  long den;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Pointwise factors.
enum class Point { Kdiag, Ldiag, Ai, B, B2 };
/// Which of F, F', F^2, F F' attaches to a variable.
enum class Slot { F, Fprime, F2, FFprime };
/// Two-point factor of a double integral.
enum class Pair {
  None,   // separable
  K,      // K(x,y)
  K2,     // K(x,y)^2
  KL,     // K(x,y) L(x,y)
  L,      // L(x,y)
  LLt,    // L(x,y) L(y,x)
  SignK,  // sgn(y-x) K(x,y)
  Sign    // sgn(y-x)
};

/// One summand of a mean or variance formula.
struct IntegralTerm {
  std::string name;
  int dimension;  // 1 or 2
  Pair pair = Pair::None;
  std::vector<Point> x_factors;
  Slot x_slot = Slot::F;
  std::vector<Point> y_factors;
  Slot y_slot = Slot::F;
  Rational coefficient{1, 1};
};

struct TermCatalog {
  std::vector<IntegralTerm> mean;
  std::vector<IntegralTerm> variance;
};

/// Catalog for the ensemble; depends on beta only.
const TermCatalog& term_catalog(const EnsembleKind& kind);

struct MomentFormulaResult {
  double mean = 0.0;
  double variance = 0.0;
  /// Coefficient-weighted term values.
  std::map<std::string, double> per_term_values;
  double mean_err = 0.0;
  double variance_err = 0.0;
  /// max(mean_err, variance_err), from a grid-halving comparison.
  double quad_err = 0.0;
  int nodes = 0;
  std::string caveat = "leading order; O(N^{-1/3}) remainder not included";
};

/// Default accuracy settings for the asymptotic formulas.
QuadratureSpec edge_quadrature_spec();

MomentFormulaResult moment_formulas(const EnsembleKind& kind, const TestFunction& F,
                                    const QuadratureSpec& spec = edge_quadrature_spec());

double mean_asymptotic(const EnsembleKind& kind, const TestFunction& F,
                       const QuadratureSpec& spec = edge_quadrature_spec());
double variance_asymptotic(const EnsembleKind& kind, const TestFunction& F,
                           const QuadratureSpec& spec = edge_quadrature_spec());

/// -lambda mean + lambda^2/2 variance; throws std::range_error if |lambda| sup|F| > 5.
double mgf_log_asymptotic(const EnsembleKind& kind, const TestFunction& F, double lambda,
                          const QuadratureSpec& spec = edge_quadrature_spec());

/// Coefficient-weighted correction integrals for beta = 1, 4.
std::map<std::string, double> correction_terms(const EnsembleKind& kind, const TestFunction& F,
                                               const QuadratureSpec& spec = edge_quadrature_spec());

/// Evaluate a single term on its own (used for diagnostics and tests).
double evaluate_term(const IntegralTerm& term, const TestFunction& F,
                     const QuadratureSpec& spec = edge_quadrature_spec());

}  // namespace edgestat

#endif
