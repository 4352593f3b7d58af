#include "edgestat/edgestats.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include <Eigen/Core>

#include "edgestat/gauss_legendre.hpp"
#include "edgestat/kernel.hpp"
#include "edgestat/specfun.hpp"

namespace edgestat {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kAiryNegligible = 16.0;
constexpr int kMaxNodes = 3200;

IntegralTerm one(std::string name, std::vector<Point> f, Slot s, Rational c) {
  IntegralTerm t;
  t.name = std::move(name);
  t.dimension = 1;
  t.x_factors = std::move(f);
  t.x_slot = s;
  t.coefficient = c;
  return t;
}

IntegralTerm two(std::string name, Pair p, std::vector<Point> xf, Slot xs, std::vector<Point> yf, Slot ys, Rational c) {
  IntegralTerm t;
  t.name = std::move(name);
  t.dimension = 2;
  t.pair = p;
  t.x_factors = std::move(xf);
  t.x_slot = xs;
  t.y_factors = std::move(yf);
  t.y_slot = ys;
  t.coefficient = c;
  return t;
}

TermCatalog make_unitary() {
  TermCatalog c;
  c.mean.push_back(one("K_diag_F", {Point::Kdiag}, Slot::F, {1, 1}));
  c.variance.push_back(one("K_diag_F2", {Point::Kdiag}, Slot::F2, {1, 1}));
  c.variance.push_back(two("K2_FF", Pair::K2, {}, Slot::F, {}, Slot::F, {-1, 1}));
  return c;
}

TermCatalog make_symplectic() {
  using P = Point;
  TermCatalog c;
  c.mean = {
      one("K_diag_F", {P::Kdiag}, Slot::F, {1, 2}),
      one("L_diag_Fprime", {P::Ldiag}, Slot::Fprime, {-1, 8}),
      one("AiB_F", {P::Ai, P::B}, Slot::F, {1, 8}),
      one("B2_Fprime", {P::B2}, Slot::Fprime, {1, 32}),
  };
  c.variance = {
      one("K_diag_F2", {P::Kdiag}, Slot::F2, {1, 2}),
      two("K2_FF", Pair::K2, {}, Slot::F, {}, Slot::F, {-1, 2}),
      one("L_diag_FFprime", {P::Ldiag}, Slot::FFprime, {-1, 4}),
      one("AiB_F2", {P::Ai, P::B}, Slot::F2, {1, 8}),
      one("B2_FFprime", {P::B2}, Slot::FFprime, {1, 16}),
      two("K_L_FprimeF", Pair::KL, {}, Slot::Fprime, {}, Slot::F, {1, 4}),
      two("K_AiB_FF", Pair::K, {P::Ai}, Slot::F, {P::B}, Slot::F, {-1, 4}),
      two("K_BB_FFprime", Pair::K, {P::B}, Slot::F, {P::B}, Slot::Fprime, {-1, 16}),
      two("L_Lt_FprimeFprime", Pair::LLt, {}, Slot::Fprime, {}, Slot::Fprime, {-1, 32}),
      two("L_AiB_FprimeF", Pair::L, {P::B}, Slot::Fprime, {P::Ai}, Slot::F, {1, 16}),
      two("L_BB_FprimeFprime", Pair::L, {P::B}, Slot::Fprime, {P::B}, Slot::Fprime, {1, 64}),
      two("AiB_AiB_FF", Pair::None, {P::Ai, P::B}, Slot::F, {P::Ai, P::B}, Slot::F, {-1, 32}),
      two("AiB_B2_FFprime", Pair::None, {P::Ai, P::B}, Slot::F, {P::B2}, Slot::Fprime, {-1, 64}),
      two("B2_B2_FprimeFprime", Pair::None, {P::B2}, Slot::Fprime, {P::B2}, Slot::Fprime, {-1, 512}),
  };
  return c;
}

TermCatalog make_orthogonal() {
  using P = Point;
  TermCatalog c;
  c.mean = {
      one("K_diag_F", {P::Kdiag}, Slot::F, {1, 1}),
      one("L_diag_Fprime", {P::Ldiag}, Slot::Fprime, {-1, 4}),
      one("AiB_F", {P::Ai, P::B}, Slot::F, {1, 4}),
      one("B2_Fprime", {P::B2}, Slot::Fprime, {1, 16}),
  };
  c.variance = {
      one("K_diag_F2", {P::Kdiag}, Slot::F2, {2, 1}),
      two("K2_FF", Pair::K2, {}, Slot::F, {}, Slot::F, {-2, 1}),
      one("L_diag_FFprime", {P::Ldiag}, Slot::FFprime, {-1, 2}),
      two("sign_K_FprimeF", Pair::SignK, {}, Slot::Fprime, {}, Slot::F, {-1, 2}),
      one("AiB_F2", {P::Ai, P::B}, Slot::F2, {1, 2}),
      two("sign_Ai_BFprimeF", Pair::Sign, {P::B}, Slot::Fprime, {P::Ai}, Slot::F, {-1, 8}),
      one("B2_FFprime", {P::B2}, Slot::FFprime, {1, 8}),
      two("AiB_B2_FFprime", Pair::None, {P::Ai, P::B}, Slot::F, {P::B2}, Slot::Fprime, {-1, 16}),
      two("K_AiB_FF", Pair::K, {P::Ai}, Slot::F, {P::B}, Slot::F, {-1, 1}),
      two("K_BB_FprimeF", Pair::K, {P::B}, Slot::Fprime, {P::B}, Slot::F, {-1, 4}),
      two("L_Lt_FprimeFprime", Pair::LLt, {}, Slot::Fprime, {}, Slot::Fprime, {-1, 8}),
      two("L_AiB_FprimeF", Pair::L, {P::B}, Slot::Fprime, {P::Ai}, Slot::F, {1, 4}),
      two("L_BB_FprimeFprime", Pair::L, {P::B}, Slot::Fprime, {P::B}, Slot::Fprime, {1, 16}),
      two("AiB_AiB_FF", Pair::None, {P::Ai, P::B}, Slot::F, {P::Ai, P::B}, Slot::F, {-1, 8}),
      two("K_L_FprimeF", Pair::KL, {}, Slot::Fprime, {}, Slot::F, {1, 1}),
      two("B2_B2_FprimeFprime", Pair::None, {P::B2}, Slot::Fprime, {P::B2}, Slot::Fprime, {-1, 128}),
  };
  return c;
}

bool uses_base_terms(const std::string& name) { return name == "K_diag_F" || name == "K_diag_F2" || name == "K2_FF"; }

// Panel grid over the support of F with everything the catalog needs.
class EdgeGrid {
 public:
  EdgeGrid(const TestFunction& F, Interval support, double width, int n) : n_(n) {
    const double len = support.hi - support.lo;
    panels_ = std::max(1, static_cast<int>(std::ceil(len / width - 1e-12)));
    const auto rule = gauss_legendre<double>(n);
    const int M = panels_ * n;
    x_.resize(M);
    w_.resize(M);
    pb_.resize(panels_);
    for (int p = 0; p < panels_; ++p) {
      const double a = support.lo + len * p / panels_;
      const double b = p + 1 == panels_ ? support.hi : support.lo + len * (p + 1) / panels_;
      pb_[p] = b;
      for (int k = 0; k < n; ++k) {
        x_(p * n + k) = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes(k);
        w_(p * n + k) = 0.5 * (b - a) * rule.weights(k);
      }
    }
    ai_.resize(M);
    aip_.resize(M);
    f_.resize(M);
    fp_.resize(M);
    for (int i = 0; i < M; ++i) {
      const auto p = airy_pair(x_(i));
      ai_(i) = p.ai;
      aip_(i) = p.aip;
      f_(i) = F(x_(i));
      fp_(i) = F.derivative(x_(i));
    }
    // sub-rules on [x_i, end of its panel]
    sx_.resize(M, n);
    sw_.resize(M, n);
    sai_.resize(M, n);
    saip_.resize(M, n);
    sf_.resize(M, n);
    sfp_.resize(M, n);
    for (int i = 0; i < M; ++i) {
      const double a = x_(i), b = pb_[i / n];
      for (int k = 0; k < n; ++k) {
        const double s = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes(k);
        sx_(i, k) = s;
        sw_(i, k) = 0.5 * (b - a) * rule.weights(k);
        const auto p = airy_pair(s);
        sai_(i, k) = p.ai;
        saip_(i, k) = p.aip;
        sf_(i, k) = F(s);
        sfp_(i, k) = F.derivative(s);
      }
    }
    K_.resize(M, M);
    for (int i = 0; i < M; ++i)
      for (int j = i; j < M; ++j) K_(i, j) = K_(j, i) = airy_kernel(x_(i), ai_(i), aip_(i), x_(j), ai_(j), aip_(j));
    // extension for z-integrals beyond the support
    if (support.hi < kAiryNegligible) {
      const double elen = kAiryNegligible - support.hi;
      const int ep = std::max(1, static_cast<int>(std::ceil(elen / width)));
      for (int p = 0; p < ep; ++p) {
        const double a = support.hi + elen * p / ep, b = support.hi + elen * (p + 1) / ep;
        for (int k = 0; k < n; ++k) {
          const double z = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes(k);
          const auto pz = airy_pair(z);
          ex_.push_back(z);
          ew_.push_back(0.5 * (b - a) * rule.weights(k));
          eai_.push_back(pz.ai);
          eaip_.push_back(pz.aip);
        }
      }
    }
  }

  int size() const { return static_cast<int>(x_.size()); }
  int panel_of(int i) const { return i / n_; }

  double sub_kernel(int i, int k, int j) const {
    return airy_kernel(sx_(i, k), sai_(i, k), saip_(i, k), x_(j), ai_(j), aip_(j));
  }

  const VectorXd& b() {
    if (b_.size() == 0) {
      b_.resize(size());
      for (int i = 0; i < size(); ++i) b_(i) = b_function(x_(i));
    }
    return b_;
  }

  const MatrixXd& sub_b() {
    if (sb_.size() == 0) {
      sb_.resize(size(), n_);
      for (int i = 0; i < size(); ++i)
        for (int k = 0; k < n_; ++k) sb_(i, k) = b_function(sx_(i, k));
    }
    return sb_;
  }

  // L(x_i, x_j) = 2 int_{x_i}^inf K(x_j, z) dz - int_{x_j}^inf Ai
  const MatrixXd& L() {
    if (L_.size() != 0) return L_;
    const int M = size();
    VectorXd ext = VectorXd::Zero(M);
    for (int j = 0; j < M; ++j) {
      double s = 0.0;
      for (std::size_t e = 0; e < ex_.size(); ++e)
        s += ew_[e] * airy_kernel(ex_[e], eai_[e], eaip_[e], x_(j), ai_(j), aip_(j));
      ext(j) = s;
    }
    // suffix[p](j) = sum over panels >= p plus extension
    MatrixXd suffix(panels_ + 1, M);
    suffix.row(panels_) = ext.transpose();
    for (int p = panels_ - 1; p >= 0; --p) {
      suffix.row(p) = suffix.row(p + 1);
      for (int k = 0; k < n_; ++k) suffix.row(p) += w_(p * n_ + k) * K_.row(p * n_ + k);
    }
    VectorXd tail(M);
    for (int j = 0; j < M; ++j) tail(j) = airy_tail(x_(j));
    L_.resize(M, M);
    for (int i = 0; i < M; ++i) {
      const int p = panel_of(i);
      for (int j = 0; j < M; ++j) {
        double part = 0.0;
        for (int k = 0; k < n_; ++k) part += sw_(i, k) * sub_kernel(i, k, j);
        L_(i, j) = 2.0 * (part + suffix(p + 1, j)) - tail(j);
      }
    }
    return L_;
  }

  VectorXd point(Point pt) {
    switch (pt) {
      case Point::Kdiag:
        return K_.diagonal();
      case Point::Ldiag:
        return L().diagonal();
      case Point::Ai:
        return ai_;
      case Point::B:
        return b();
      case Point::B2:
        return b().array().square();
    }
    return {};
  }

  VectorXd slot(Slot s) const {
    switch (s) {
      case Slot::F:
        return f_;
      case Slot::Fprime:
        return fp_;
      case Slot::F2:
        return f_.array().square();
      case Slot::FFprime:
        return f_.array() * fp_.array();
    }
    return {};
  }

  MatrixXd sub_values(const std::vector<Point>& factors, Slot s) {
    MatrixXd v;
    switch (s) {
      case Slot::F:
        v = sf_;
        break;
      case Slot::Fprime:
        v = sfp_;
        break;
      case Slot::F2:
        v = sf_.array().square();
        break;
      case Slot::FFprime:
        v = sf_.array() * sfp_.array();
        break;
    }
    for (Point pt : factors) {
      switch (pt) {
        case Point::Ai:
          v.array() *= sai_.array();
          break;
        case Point::B:
          v.array() *= sub_b().array();
          break;
        case Point::B2:
          v.array() *= sub_b().array().square();
          break;
        default:
          throw std::logic_error("sign-weighted term with a kernel-diagonal factor");
      }
    }
    return v;
  }

  VectorXd values(const std::vector<Point>& factors, Slot s) {
    VectorXd v = slot(s);
    for (Point pt : factors) v.array() *= point(pt).array();
    return v;
  }

  double evaluate(const IntegralTerm& t) {
    const VectorXd X = values(t.x_factors, t.x_slot);
    const VectorXd wX = w_.cwiseProduct(X);
    if (t.dimension == 1) return wX.sum();
    const VectorXd Y = values(t.y_factors, t.y_slot);
    const VectorXd wY = w_.cwiseProduct(Y);
    switch (t.pair) {
      case Pair::None:
        return wX.sum() * wY.sum();
      case Pair::K:
        return wX.dot(K_ * wY);
      case Pair::K2:
        return wX.dot(K_.cwiseProduct(K_) * wY);
      case Pair::KL:
        return wX.dot(K_.cwiseProduct(L()) * wY);
      case Pair::L:
        return wX.dot(L() * wY);
      case Pair::LLt: {
        const MatrixXd& l = L();
        return wX.dot(l.cwiseProduct(l.transpose()) * wY);
      }
      case Pair::Sign:
      case Pair::SignK:
        return sign_term(t, wX, wY);
    }
    return 0.0;
  }

 private:
  // sum_i wX_i [2 int_{x_i}^hi g - int g], g(y) = (K(x_i,y)) Y(y)
  double sign_term(const IntegralTerm& t, const VectorXd& wX, const VectorXd& wY) {
    const bool withK = t.pair == Pair::SignK;
    const MatrixXd sY = sub_values(t.y_factors, t.y_slot);
    const int M = size();
    double total = 0.0;
    VectorXd row(M);
    for (int i = 0; i < M; ++i) {
      if (wX(i) == 0.0) continue;
      const int p = panel_of(i);
      if (withK)
        row = K_.row(i).transpose().cwiseProduct(wY);
      else
        row = wY;
      const double all = row.sum();
      const double after = row.tail(M - (p + 1) * n_).sum();
      double part = 0.0;
      for (int k = 0; k < n_; ++k) {
        const double kv = withK ? airy_kernel(x_(i), ai_(i), aip_(i), sx_(i, k), sai_(i, k), saip_(i, k)) : 1.0;
        part += sw_(i, k) * kv * sY(i, k);
      }
      total += wX(i) * (2.0 * (part + after) - all);
    }
    return total;
  }

  int n_;
  int panels_ = 0;
  std::vector<double> pb_;
  VectorXd x_, w_, ai_, aip_, f_, fp_, b_;
  MatrixXd sx_, sw_, sai_, saip_, sf_, sfp_, sb_;
  std::vector<double> ex_, ew_, eai_, eaip_;
  MatrixXd K_, L_;
};

struct Pass {
  double mean = 0.0;
  double variance = 0.0;
  std::map<std::string, double> terms;
};

Pass run_pass(const TermCatalog& cat, const TestFunction& F, Interval support, double width, int n, bool want_mean,
              bool want_var) {
  EdgeGrid g(F, support, width, n);
  Pass out;
  if (want_mean)
    for (const auto& t : cat.mean) {
      const double v = t.coefficient.value() * g.evaluate(t);
      out.terms[t.name] = v;
      out.mean += v;
    }
  if (want_var)
    for (const auto& t : cat.variance) {
      const double v = t.coefficient.value() * g.evaluate(t);
      out.terms[t.name] = v;
      out.variance += v;
    }
  return out;
}

MomentFormulaResult evaluate(const EnsembleKind& kind, const TestFunction& F, const QuadratureSpec& spec,
                             bool want_mean, bool want_var) {
  kind.validate();
  spec.validate();
  const TermCatalog& cat = term_catalog(kind);
  MomentFormulaResult r;
  if (F.is_zero()) {
    if (want_mean)
      for (const auto& t : cat.mean) r.per_term_values[t.name] = 0.0;
    if (want_var)
      for (const auto& t : cat.variance) r.per_term_values[t.name] = 0.0;
    return r;
  }
  const Interval support = F.effective_support();
  const int n = spec.nodes_per_panel;
  double width = 0.5;
  Pass prev = run_pass(cat, F, support, width, n, want_mean, want_var);
  for (int level = 1; level <= spec.max_level; ++level) {
    width *= 0.5;
    const int nodes = static_cast<int>(std::ceil((support.hi - support.lo) / width)) * n;
    if (nodes > kMaxNodes) break;
    Pass cur = run_pass(cat, F, support, width, n, want_mean, want_var);
    r.mean = cur.mean;
    r.variance = cur.variance;
    r.per_term_values = cur.terms;
    r.mean_err = std::abs(cur.mean - prev.mean);
    r.variance_err = std::abs(cur.variance - prev.variance);
    r.quad_err = std::max(r.mean_err, r.variance_err);
    r.nodes = nodes;
    const bool ok_mean = r.mean_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(r.mean));
    const bool ok_var = r.variance_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(r.variance));
    if (ok_mean && ok_var) return r;
    prev = std::move(cur);
  }
  if (r.nodes == 0) {
    r.mean = prev.mean;
    r.variance = prev.variance;
    r.per_term_values = prev.terms;
  }
  throw QuadratureError("edge moment formulas: tolerance not met within node budget",
                        QuadResult{want_mean ? r.mean : r.variance, r.quad_err, r.nodes});
}

}  // namespace

const TermCatalog& term_catalog(const EnsembleKind& kind) {
  static const TermCatalog unitary = make_unitary();
  static const TermCatalog symplectic = make_symplectic();
  static const TermCatalog orthogonal = make_orthogonal();
  switch (kind.beta) {
    case 2:
      return unitary;
    case 4:
      return symplectic;
    case 1:
      return orthogonal;
  }
  throw std::invalid_argument("beta must be 1, 2 or 4");
}

QuadratureSpec edge_quadrature_spec() {
  QuadratureSpec s;
  s.nodes_per_panel = 16;
  s.abs_tol = 1e-10;
  s.rel_tol = 1e-10;
  s.max_level = 4;
  return s;
}

MomentFormulaResult moment_formulas(const EnsembleKind& kind, const TestFunction& F, const QuadratureSpec& spec) {
  return evaluate(kind, F, spec, true, true);
}

double mean_asymptotic(const EnsembleKind& kind, const TestFunction& F, const QuadratureSpec& spec) {
  return evaluate(kind, F, spec, true, false).mean;
}

double variance_asymptotic(const EnsembleKind& kind, const TestFunction& F, const QuadratureSpec& spec) {
  return evaluate(kind, F, spec, false, true).variance;
}

double mgf_log_asymptotic(const EnsembleKind& kind, const TestFunction& F, double lambda, const QuadratureSpec& spec) {
  if (std::abs(lambda) * F.sup_abs() > 5.0)
    throw std::range_error("mgf_log_asymptotic: |lambda| * max|F| > 5 is outside the quadratic regime");
  if (lambda == 0.0) return 0.0;
  const auto r = moment_formulas(kind, F, spec);
  return -lambda * r.mean + 0.5 * lambda * lambda * r.variance;
}

std::map<std::string, double> correction_terms(const EnsembleKind& kind, const TestFunction& F,
                                               const QuadratureSpec& spec) {
  if (kind.beta == 2) throw std::invalid_argument("correction_terms: defined for beta = 1, 4 only");
  const auto r = moment_formulas(kind, F, spec);
  std::map<std::string, double> out;
  for (const auto& [name, v] : r.per_term_values)
    if (!uses_base_terms(name)) out[name] = v;
  return out;
}

double evaluate_term(const IntegralTerm& term, const TestFunction& F, const QuadratureSpec& spec) {
  if (F.is_zero()) return 0.0;
  TermCatalog cat;
  cat.mean.push_back(term);
  const Interval support = F.effective_support();
  double width = 0.5;
  double prev = run_pass(cat, F, support, width, spec.nodes_per_panel, true, false).mean;
  for (int level = 1; level <= spec.max_level; ++level) {
    width *= 0.5;
    if (std::ceil((support.hi - support.lo) / width) * spec.nodes_per_panel > kMaxNodes) break;
    const double cur = run_pass(cat, F, support, width, spec.nodes_per_panel, true, false).mean;
    if (std::abs(cur - prev) <= std::max(spec.abs_tol, spec.rel_tol * std::abs(cur))) return cur;
    prev = cur;
  }
  throw QuadratureError("evaluate_term: tolerance not met", QuadResult{prev, 0.0, 0});
}

}  // namespace edgestat
