#ifndef EDGESTAT_FREDHOLM_HPP
#define EDGESTAT_FREDHOLM_HPP

#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "edgestat/ensemble.hpp"
#include "edgestat/quad.hpp"
#include "edgestat/test_function.hpp"

namespace edgestat {

struct NystromGrid {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  Interval window{0.0, 0.0};

  /// `panels` equal Gauss-Legendre panels of `per_panel` nodes on [a, b].
  static NystromGrid gauss_legendre(double a, double b, int panels, int per_panel);
  /// Same window with twice the panels.
  NystromGrid refined() const;
  void validate() const;

  int per_panel = 0;
  int panels = 0;
};

/// [-10, 6], 80 nodes.
NystromGrid default_airy_grid();

class WindowTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularDeterminant : public std::runtime_error {
 public:
  SingularDeterminant(const std::string& what, double where) : std::runtime_error(what), where_(where) {}
  double where() const { return where_; }

 private:
  double where_;
};

using ScalarFunction = std::function<double(double)>;

/// log det(I + K f) for a kernel matrix sampled on the grid.
double logdet_kernel(const Eigen::MatrixXd& K, const ScalarFunction& fhat, const NystromGrid& grid);

/// log det(I + K_Airy fhat).
double logdet_airy(const ScalarFunction& fhat, const NystromGrid& grid);

/// sum_{m<=k} (-1)^{m+1}/m Tr (K fhat)^m, k in {1, 2, 3}.
double logdet_trace_expansion(const ScalarFunction& fhat, const NystromGrid& grid, int k);

/// log E exp(-lambda sum F(scaled x_j)) at finite N for GUE/LUE; grid in edge coordinates.
double mgf_finiteN_unitary(const EnsembleKind& kind, int N, const TestFunction& F, double lambda,
                           const NystromGrid& grid);

/// Same quantity through the N x N Gram matrix of the wavefunctions (rank-reduced form).
double mgf_finiteN_unitary_reduced(const EnsembleKind& kind, int N, const TestFunction& F, double lambda,
                                   const NystromGrid& grid);

/// Grid covering the support of F in edge coordinates.
NystromGrid grid_for(const TestFunction& F, int per_panel = 20, double panel_width = 1.0);

}  // namespace edgestat

#endif
