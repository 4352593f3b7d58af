#include "edgestat/ensemble.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace edgestat {

EnsembleKind EnsembleKind::parse(const std::string& name, double alpha) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "gue") return gue();
  if (s == "gse") return gse();
  if (s == "goe") return goe();
  if (s == "lue") return lue(alpha);
  if (s == "lse") return lse(alpha);
  if (s == "loe") return loe(alpha);
  throw std::invalid_argument("unknown ensemble '" + name + "'");
}

void EnsembleKind::validate() const {
  if (beta != 1 && beta != 2 && beta != 4) throw std::invalid_argument("beta must be 1, 2 or 4");
  if (family != Family::Laguerre) return;
  if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
  if (beta == 2 && !(alpha > -1)) throw std::invalid_argument("alpha must be > -1 for LUE");
  if (beta == 4 && !(alpha > 0)) throw std::invalid_argument("alpha must be > 0 for LSE");
  if (beta == 1 && !(alpha > -2)) throw std::invalid_argument("alpha must be > -2 for LOE");
}

void EnsembleKind::validate(int N) const {
  validate();
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (beta == 1 && N % 2 != 0) throw std::invalid_argument("N must be even for " + name());
}

std::string EnsembleKind::name() const {
  const char* b = beta == 2 ? "U" : beta == 4 ? "S" : "O";
  return std::string(family == Family::Gaussian ? "G" : "L") + b + "E";
}

EdgeScaling edge_scaling(const EnsembleKind& kind, int N) {
  kind.validate(N);
  const double n = N, a = kind.alpha;
  const double n6 = std::cbrt(std::sqrt(n)), n3 = std::cbrt(n);
  if (kind.family == Family::Gaussian) {
    if (kind.beta == 4) return {std::sqrt(4.0 * n), std::pow(2.0, 2.0 / 3.0) * n6};
    return {std::sqrt(2.0 * n), std::sqrt(2.0) * n6};
  }
  switch (kind.beta) {
    case 2:
      return {4.0 * n + 2.0 * a + 2.0, 1.0 / (std::pow(2.0, 4.0 / 3.0) * n3)};
    case 4:
      return {8.0 * n + 2.0 * a, 1.0 / (std::pow(2.0, 5.0 / 3.0) * n3)};
    default:
      return {4.0 * n + 2.0 * a + 4.0, 1.0 / (std::pow(2.0, 4.0 / 3.0) * n3)};
  }
}

}  // namespace edgestat
