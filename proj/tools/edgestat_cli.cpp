#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "edgestat/bwasym.hpp"
#include "edgestat/edgestats.hpp"
#include "edgestat/fredholm.hpp"
#include "edgestat/kernel.hpp"
#include "edgestat/mcsim.hpp"
#include "edgestat/report.hpp"

using namespace edgestat;

namespace {

constexpr const char* kVersion = "1.0.0";

// Defaults for every command; flags override.
namespace defaults {
constexpr const char* ensemble = "gue";
constexpr double alpha = 0.0;
constexpr const char* f_mean = "gauss:1,0";
constexpr const char* f_bw = "gauss:1,-2";
constexpr int N = 300;
constexpr long samples = 20000;
constexpr std::uint64_t seed = 42;
constexpr double tol = 1e-10;
constexpr double lambda_bw = 0.05;
constexpr double fd_step = 1e-3;  // finite-difference step in lambda for Fredholm moments
constexpr double mean_slack = 0.05;  // multiplies N^{-1/3} in compare
const std::vector<int> Ns{50, 100, 200, 400};
const std::vector<double> gammas{4.0, 6.0, 8.0};
}  // namespace defaults

enum class Format { csv, json };

struct RunConfig {
  std::string command;
  std::string ensemble = defaults::ensemble;
  int N = defaults::N;
  std::vector<int> Ns = defaults::Ns;
  double alpha = defaults::alpha;
  std::string f;
  double lambda = defaults::lambda_bw;
  std::vector<double> gammas = defaults::gammas;
  long n_samples = defaults::samples;
  std::uint64_t seed = defaults::seed;
  double tol = defaults::tol;
  std::string output_path = "-";
  Format format = Format::csv;
};

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

QuadratureSpec spec_for(const RunConfig& c) {
  QuadratureSpec s = edge_quadrature_spec();
  s.abs_tol = c.tol;
  s.rel_tol = c.tol;
  return s;
}

nlohmann::ordered_json meta_for(const RunConfig& c) {
  nlohmann::ordered_json m;
  m["command"] = c.command;
  m["ensemble"] = c.ensemble;
  m["alpha"] = c.alpha;
  m["N"] = c.N;
  m["Ns"] = c.Ns;
  m["f"] = c.f;
  m["lambda"] = c.lambda;
  m["gammas"] = c.gammas;
  m["n_samples"] = c.n_samples;
  m["seed"] = c.seed;
  m["tol"] = c.tol;
  m["versions"] = {{"edgestat", kVersion},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)}};
  return m;
}

Table cmd_moment(const RunConfig& c, bool mean) {
  const EnsembleKind kind = EnsembleKind::parse(c.ensemble, c.alpha);
  kind.validate();
  const TestFunction F = TestFunction::parse(c.f);
  const MomentFormulaResult r = moment_formulas(kind, F, spec_for(c));
  Table t;
  t.columns = {"ensemble", "F", "value", "quad_err"};
  std::vector<Cell> row{kind.name(), F.describe(), mean ? r.mean : r.variance, mean ? r.mean_err : r.variance_err};
  const auto& cat = term_catalog(kind);
  for (const auto& term : mean ? cat.mean : cat.variance) {
    t.columns.push_back("term:" + term.name);
    auto it = r.per_term_values.find(term.name);
    row.push_back(it == r.per_term_values.end() ? 0.0 : it->second);
  }
  t.add(std::move(row));
  return t;
}

Table cmd_compare(const RunConfig& c) {
  const EnsembleKind kind = EnsembleKind::parse(c.ensemble, c.alpha);
  kind.validate(c.N);
  const TestFunction F = TestFunction::parse(c.f);
  const MomentFormulaResult asy = moment_formulas(kind, F, spec_for(c));
  const MomentEstimate mc = estimate_moments(kind, c.N, F, c.n_samples, c.seed);
  const double slack = defaults::mean_slack * std::pow(static_cast<double>(c.N), -1.0 / 3.0);
  Table t;
  t.columns = {"source", "mean", "variance", "stderr", "gap", "gap_over_stderr", "within_3se_plus_slack"};
  auto add = [&](const std::string& src, double m, double v, double se) {
    const double gap = m - asy.mean;
    const double ratio = se > 0.0 ? gap / se : 0.0;
    const bool ok = std::abs(gap) <= 3.0 * se + slack;
    t.add({src, m, v, se, gap, ratio, static_cast<long long>(ok)});
  };
  add("asymptotic", asy.mean, asy.variance, 0.0);
  add("monte_carlo", mc.mean, mc.variance, mc.stderr_mean);
  if (kind.beta == 2) {
    const double h = defaults::fd_step;
    const NystromGrid g = grid_for(F);
    const double lp = mgf_finiteN_unitary(kind, c.N, F, h, g);
    const double lm = mgf_finiteN_unitary(kind, c.N, F, -h, g);
    add("fredholm", -(lp - lm) / (2.0 * h), (lp + lm) / (h * h), mc.stderr_mean);
  }
  return t;
}

Table cmd_kernel_converge(const RunConfig& c) {
  const EnsembleKind kind = EnsembleKind::parse(c.ensemble, c.alpha);
  for (int N : c.Ns) kind.validate(N);
  Table t;
  t.columns = {"quantity", "N", "value"};
  std::vector<double> errs;
  for (int N : c.Ns) {
    errs.push_back(kernel_sup_error(kind, N, rate_grid()));
    t.add({std::string("sup_error"), static_cast<long long>(N), errs.back()});
  }
  if (c.Ns.size() >= 2) t.add({std::string("slope"), std::string(""), loglog_slope(c.Ns, errs)});
  return t;
}

Table cmd_bw_scan(const RunConfig& c) {
  const TestFunction F = TestFunction::parse(c.f);
  if (c.gammas.empty()) throw std::invalid_argument("gamma list must be non-empty");
  for (double g : c.gammas)
    if (!(g > 0.0)) throw std::invalid_argument("gamma must be > 0");
  const QuadratureSpec qs = bw_quadrature_spec();
  const double c1 = bw_c1(F, c.lambda, qs);
  const double c2 = bw_c2(F, c.lambda, qs);
  Table t;
  t.columns = {"row_type", "gamma", "logdet", "predicted", "residual", "c1", "c2"};
  std::vector<double> lds;
  for (double g : c.gammas) {
    const double ld = bw_logdet(F, c.lambda, g);
    const double pred = c1 * std::pow(g, 1.5) + c2;
    lds.push_back(ld);
    t.add({std::string("scan"), g, ld, pred, ld - pred, c1, c2});
  }
  t.add({std::string("direct"), 0.0, 0.0, 0.0, 0.0, c1, c2});
  if (c.gammas.size() >= 2) {
    const BWRegression r = bw_regress(c.gammas, lds);
    t.add({std::string("regression"), 0.0, 0.0, 0.0, 0.0, r.c1, r.c2});
  }
  return t;
}

std::string render(const RunConfig& c, const Table& t) {
  std::ostringstream os;
  if (c.format == Format::csv)
    write_csv(os, t);
  else
    write_json(os, t, meta_for(c));
  return os.str();
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.output_path == "-" || c.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + c.output_path);
  out << text;
}

int run(const RunConfig& c) {
  std::string text;
  if (c.command == "mean" || c.command == "variance") {
    text = render(c, cmd_moment(c, c.command == "mean"));
  } else if (c.command == "compare") {
    text = render(c, cmd_compare(c));
  } else if (c.command == "kernel-converge") {
    text = render(c, cmd_kernel_converge(c));
  } else if (c.command == "bw-scan") {
    text = render(c, cmd_bw_scan(c));
  } else if (c.command == "sample-export") {
    const EnsembleKind kind = EnsembleKind::parse(c.ensemble, c.alpha);
    std::ostringstream os;
    write_samples_csv(os, kind, c.N, c.n_samples, c.seed);
    text = os.str();
  }
  emit(c, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge linear-statistics toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "csv";

  auto common = [&](CLI::App* s) {
    s->add_option("--ensemble", cfg.ensemble, "gue, gse, goe, lue, lse, loe");
    s->add_option("--alpha", cfg.alpha, "Laguerre parameter");
    s->add_option("--output,-o", cfg.output_path, "output file, - for stdout");
    s->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* mean = app.add_subcommand("mean", "asymptotic mean of the scaled statistic");
  auto* variance = app.add_subcommand("variance", "asymptotic variance of the scaled statistic");
  for (auto* s : {mean, variance}) {
    common(s);
    s->add_option("--f", cfg.f, "test function, e.g. gauss:1,0");
    s->add_option("--tol", cfg.tol, "quadrature tolerance");
  }

  auto* compare = app.add_subcommand("compare", "asymptotics vs Monte Carlo vs Fredholm");
  common(compare);
  compare->add_option("--f", cfg.f, "test function");
  compare->add_option("--N", cfg.N, "matrix size");
  compare->add_option("--samples", cfg.n_samples, "Monte Carlo samples");
  compare->add_option("--seed", cfg.seed, "RNG seed");
  compare->add_option("--tol", cfg.tol, "quadrature tolerance");

  auto* kc = app.add_subcommand("kernel-converge", "sup-grid kernel error and log-log slope");
  common(kc);
  kc->add_option("--N", cfg.Ns, "list of N")->delimiter(',');

  auto* bw = app.add_subcommand("bw-scan", "Basor-Widom scan over gamma");
  bw->add_option("--output,-o", cfg.output_path, "output file, - for stdout");
  bw->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  bw->add_option("--f", cfg.f, "test function");
  bw->add_option("--lambda", cfg.lambda, "MGF parameter");
  bw->add_option("--gammas", cfg.gammas, "list of gamma")->delimiter(',');

  auto* se = app.add_subcommand("sample-export", "raw eigenvalue samples as CSV");
  se->add_option("--ensemble", cfg.ensemble, "ensemble");
  se->add_option("--alpha", cfg.alpha, "Laguerre parameter");
  se->add_option("--N", cfg.N, "matrix size");
  se->add_option("--samples", cfg.n_samples, "number of samples");
  se->add_option("--seed", cfg.seed, "RNG seed");
  se->add_option("--output,-o", cfg.output_path, "output file, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = format == "json" ? Format::json : Format::csv;
  if (cfg.f.empty()) cfg.f = cfg.command == "bw-scan" ? defaults::f_bw : defaults::f_mean;

  try {
    return run(cfg);
  } catch (const LogDomainError& e) {
    std::cerr << "error: " << e.what() << " at x = " << format_double(e.where()) << '\n';
    return 3;
  } catch (const SingularDeterminant& e) {
    std::cerr << "error: " << e.what() << " at x = " << format_double(e.where()) << '\n';
    return 3;
  } catch (const QuadratureError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const WindowTooSmall& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::range_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
