#ifndef EDGESTAT_ENSEMBLE_HPP
#define EDGESTAT_ENSEMBLE_HPP

#include <string>

namespace edgestat {

enum class Family { Gaussian, Laguerre };

/// Ensemble family, Dyson index and Laguerre parameter.
struct EnsembleKind {
  Family family = Family::Gaussian;
  int beta = 2;
  double alpha = 0.0;

  static EnsembleKind gue() { return {Family::Gaussian, 2, 0.0}; }
  static EnsembleKind gse() { return {Family::Gaussian, 4, 0.0}; }
  static EnsembleKind goe() { return {Family::Gaussian, 1, 0.0}; }
  static EnsembleKind lue(double a) { return {Family::Laguerre, 2, a}; }
  static EnsembleKind lse(double a) { return {Family::Laguerre, 4, a}; }
  static EnsembleKind loe(double a) { return {Family::Laguerre, 1, a}; }

  /// Parses "gue", "gse", "goe", "lue", "lse", "loe" (case-insensitive).
  static EnsembleKind parse(const std::string& name, double alpha = 0.0);

  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
  /// Also checks N (N >= 1, even for beta = 1).
  void validate(int N) const;

  std::string name() const;
};

/// x -> stat_scale * (x - center) maps the spectrum edge to the Airy coordinate.
struct EdgeScaling {
  double center = 0.0;
  double stat_scale = 1.0;

  double to_edge(double x) const { return stat_scale * (x - center); }
  double from_edge(double xi) const { return center + xi / stat_scale; }
};

EdgeScaling edge_scaling(const EnsembleKind& kind, int N);

}  // namespace edgestat

#endif
