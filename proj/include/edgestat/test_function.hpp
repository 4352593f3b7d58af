#ifndef EDGESTAT_TEST_FUNCTION_HPP
#define EDGESTAT_TEST_FUNCTION_HPP

#include <string>
#include <vector>

#include "edgestat/quad.hpp"

namespace edgestat {

enum class FFamily { GaussBump, PolyGauss, Sech2 };

struct FTerm {
  FFamily family;
  double p1;  // GaussBump: a, PolyGauss: k, Sech2: a
  double p2;  // GaussBump: c, PolyGauss: a
  double amplitude = 1.0;
  double shift = 0.0;
};

/// Smooth rapidly decaying statistic F with closed-form F'.
/// A finite sum of scaled, shifted family members; the empty sum is F = 0.
class TestFunction {
 public:
  TestFunction() = default;

  /// e^{-a (x - c)^2}
  static TestFunction gauss(double a, double c);
  /// x^k e^{-a x^2}
  static TestFunction polygauss(int k, double a);
  /// sech^2(a x)
  static TestFunction sech2(double a);
  static TestFunction zero() { return {}; }

  /// "gauss:a,c", "polygauss:k,a", "sech2:a", "zero".
  static TestFunction parse(const std::string& spec);

  double operator()(double x) const;
  double derivative(double x) const;

  /// Interval outside of which |F| < 1e-16 and |F'| < 1e-16.
  Interval effective_support() const;
  /// Upper bound on sup |F|.
  double sup_abs() const;
  bool is_zero() const { return terms_.empty(); }

  /// x -> F(x - s)
  TestFunction shifted(double s) const;
  std::string describe() const;

  const std::vector<FTerm>& terms() const { return terms_; }

  friend TestFunction operator+(const TestFunction& a, const TestFunction& b);
  friend TestFunction operator*(double c, const TestFunction& f);

 private:
  std::vector<FTerm> terms_;
};

}  // namespace edgestat

#endif
