#include "edgestat/fredholm.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "edgestat/gauss_legendre.hpp"
#include "edgestat/kernel.hpp"
#include "edgestat/specfun.hpp"
#include "edgestat/wavefunctions.hpp"

namespace edgestat {

namespace {

constexpr double kLeak = 1e-12;

Eigen::MatrixXd airy_matrix(const Eigen::VectorXd& x) {
  const int M = static_cast<int>(x.size());
  Eigen::VectorXd a(M), p(M);
  for (int i = 0; i < M; ++i) {
    const auto ap = airy_pair(x(i));
    a(i) = ap.ai;
    p(i) = ap.aip;
  }
  Eigen::MatrixXd K(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = i; j < M; ++j) K(i, j) = K(j, i) = airy_kernel(x(i), a(i), p(i), x(j), a(j), p(j));
  return K;
}

Eigen::VectorXd sample(const ScalarFunction& fhat, const NystromGrid& grid) {
  grid.validate();
  if (std::abs(fhat(grid.window.lo)) > kLeak || std::abs(fhat(grid.window.hi)) > kLeak)
    throw WindowTooSmall("Fredholm window too small: |fhat| exceeds 1e-12 at the window boundary");
  Eigen::VectorXd f(grid.nodes.size());
  for (int i = 0; i < f.size(); ++i) {
    f(i) = fhat(grid.nodes(i));
    if (!(1.0 + f(i) > 0.0) || !std::isfinite(f(i)))
      throw SingularDeterminant("1 + fhat is not positive at x = " + std::to_string(grid.nodes(i)), grid.nodes(i));
  }
  return f;
}

double logdet_from(const Eigen::MatrixXd& K, const Eigen::VectorXd& f, const NystromGrid& grid) {
  const int M = static_cast<int>(f.size());
  const bool nonneg = (f.array() >= 0.0).all(), nonpos = (f.array() <= 0.0).all();
  const bool symmetric = K.isApprox(K.transpose(), 0.0);
  if (symmetric && (nonneg || nonpos)) {
    const double s = nonneg ? 1.0 : -1.0;
    const Eigen::VectorXd d = (grid.weights.array() * f.array().abs()).sqrt();
    Eigen::MatrixXd A = s * (d.asDiagonal() * K * d.asDiagonal());
    A.diagonal().array() += 1.0;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() == Eigen::Success) return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  }
  const Eigen::VectorXd sw = grid.weights.array().sqrt();
  Eigen::MatrixXd A = sw.asDiagonal() * K * (sw.array() * f.array()).matrix().asDiagonal();
  A.diagonal().array() += 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const Eigen::MatrixXd& LU = lu.matrixLU();
  double logabs = 0.0;
  double sign = lu.permutationP().determinant();
  for (int i = 0; i < M; ++i) {
    const double u = LU(i, i);
    if (u == 0.0) throw SingularDeterminant("determinant is zero", 0.0);
    if (u < 0) sign = -sign;
    logabs += std::log(std::abs(u));
  }
  if (sign < 0) throw SingularDeterminant("determinant is negative", 0.0);
  return logabs;
}

}  // namespace

NystromGrid NystromGrid::gauss_legendre(double a, double b, int panels, int per_panel) {
  if (!(a < b) || panels < 1 || per_panel < 1) throw std::invalid_argument("NystromGrid: bad window or node count");
  const auto rule = edgestat::gauss_legendre<double>(per_panel);
  NystromGrid g;
  g.window = {a, b};
  g.per_panel = per_panel;
  g.panels = panels;
  g.nodes.resize(panels * per_panel);
  g.weights.resize(panels * per_panel);
  for (int p = 0; p < panels; ++p) {
    const double lo = a + (b - a) * p / panels, hi = p + 1 == panels ? b : a + (b - a) * (p + 1) / panels;
    for (int k = 0; k < per_panel; ++k) {
      g.nodes(p * per_panel + k) = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes(k);
      g.weights(p * per_panel + k) = 0.5 * (hi - lo) * rule.weights(k);
    }
  }
  return g;
}

NystromGrid NystromGrid::refined() const { return gauss_legendre(window.lo, window.hi, 2 * panels, per_panel); }

void NystromGrid::validate() const {
  if (nodes.size() == 0 || nodes.size() != weights.size()) throw std::invalid_argument("NystromGrid: empty or mismatched");
  for (int i = 1; i < nodes.size(); ++i)
    if (!(nodes(i) > nodes(i - 1))) throw std::invalid_argument("NystromGrid: nodes must be strictly increasing");
  if (nodes(0) <= window.lo || nodes(nodes.size() - 1) >= window.hi)
    throw std::invalid_argument("NystromGrid: nodes must lie inside the window");
  if ((weights.array() <= 0.0).any()) throw std::invalid_argument("NystromGrid: weights must be positive");
}

NystromGrid default_airy_grid() { return NystromGrid::gauss_legendre(-10.0, 6.0, 4, 20); }

double logdet_kernel(const Eigen::MatrixXd& K, const ScalarFunction& fhat, const NystromGrid& grid) {
  const Eigen::VectorXd f = sample(fhat, grid);
  if ((f.array() == 0.0).all()) return 0.0;
  return logdet_from(K, f, grid);
}

double logdet_airy(const ScalarFunction& fhat, const NystromGrid& grid) {
  const Eigen::VectorXd f = sample(fhat, grid);
  if ((f.array() == 0.0).all()) return 0.0;
  return logdet_from(airy_matrix(grid.nodes), f, grid);
}

double logdet_trace_expansion(const ScalarFunction& fhat, const NystromGrid& grid, int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("logdet_trace_expansion: k must be 1, 2 or 3");
  const Eigen::VectorXd f = sample(fhat, grid);
  if ((f.array() == 0.0).all()) return 0.0;
  const Eigen::VectorXd sw = grid.weights.array().sqrt();
  const Eigen::MatrixXd A = sw.asDiagonal() * airy_matrix(grid.nodes) * (sw.array() * f.array()).matrix().asDiagonal();
  double out = A.trace();
  if (k >= 2) {
    const Eigen::MatrixXd A2 = A * A;
    out -= 0.5 * A2.trace();
    if (k >= 3) out += (A2 * A).trace() / 3.0;
  }
  return out;
}

double mgf_finiteN_unitary(const EnsembleKind& kind, int N, const TestFunction& F, double lambda,
                           const NystromGrid& grid) {
  kind.validate(N);
  if (kind.beta != 2) throw std::domain_error("mgf_finiteN_unitary: beta must be 2");
  if (N > 2000) throw std::domain_error("mgf_finiteN_unitary: N must be <= 2000");
  if (lambda == 0.0 || F.is_zero()) return 0.0;
  const ScalarFunction fhat = [&](double x) { return std::expm1(-lambda * F(x)); };
  const Eigen::VectorXd f = sample(fhat, grid);
  return logdet_from(scaled_edge_kernel_matrix(kind, N, grid.nodes), f, grid);
}

double mgf_finiteN_unitary_reduced(const EnsembleKind& kind, int N, const TestFunction& F, double lambda,
                                   const NystromGrid& grid) {
  kind.validate(N);
  if (kind.beta != 2) throw std::domain_error("mgf_finiteN_unitary_reduced: beta must be 2");
  if (lambda == 0.0 || F.is_zero()) return 0.0;
  const ScalarFunction fhat = [&](double x) { return std::expm1(-lambda * F(x)); };
  const Eigen::VectorXd f = sample(fhat, grid);
  const EdgeScaling s = edge_scaling(kind, N);
  const double sigma = 1.0 / s.stat_scale;
  const int M = static_cast<int>(grid.nodes.size());
  Eigen::MatrixXd Phi(M, N);
  for (int i = 0; i < M; ++i) {
    const double u = s.from_edge(grid.nodes(i));
    Phi.row(i) = (kind.family == Family::Gaussian ? hermite_all(N, u) : laguerre_all(N, kind.alpha, u)).transpose();
  }
  const Eigen::VectorXd wf = sigma * grid.weights.array() * f.array();
  Eigen::MatrixXd G = Phi.transpose() * wf.asDiagonal() * Phi;
  G.diagonal().array() += 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(G);
  const Eigen::MatrixXd& LU = lu.matrixLU();
  double logabs = 0.0, sign = lu.permutationP().determinant();
  for (int i = 0; i < N; ++i) {
    if (LU(i, i) < 0) sign = -sign;
    logabs += std::log(std::abs(LU(i, i)));
  }
  if (sign < 0 || !std::isfinite(logabs)) throw SingularDeterminant("reduced determinant is not positive", 0.0);
  return logabs;
}

NystromGrid grid_for(const TestFunction& F, int per_panel, double panel_width) {
  Interval s = F.is_zero() ? Interval{-1.0, 1.0} : F.effective_support();
  s.lo -= 0.5;
  s.hi += 0.5;
  const int panels = std::max(1, static_cast<int>(std::ceil((s.hi - s.lo) / panel_width)));
  return NystromGrid::gauss_legendre(s.lo, s.hi, panels, per_panel);
}

}  // namespace edgestat
