#include "edgestat/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace edgestat {

namespace {

constexpr double kNegligible = 1e-16;

double term_value(const FTerm& t, double x) {
  const double u = x - t.shift;
  switch (t.family) {
    case FFamily::GaussBump: {
      const double d = u - t.p2;
      return t.amplitude * std::exp(-t.p1 * d * d);
    }
    case FFamily::PolyGauss:
      return t.amplitude * std::pow(u, static_cast<int>(t.p1)) * std::exp(-t.p2 * u * u);
    case FFamily::Sech2: {
      const double c = 1.0 / std::cosh(t.p1 * u);
      return t.amplitude * c * c;
    }
  }
  return 0.0;
}

double term_derivative(const FTerm& t, double x) {
  const double u = x - t.shift;
  switch (t.family) {
    case FFamily::GaussBump: {
      const double d = u - t.p2;
      return -2.0 * t.p1 * d * t.amplitude * std::exp(-t.p1 * d * d);
    }
    case FFamily::PolyGauss: {
      const int k = static_cast<int>(t.p1);
      const double e = std::exp(-t.p2 * u * u);
      const double lead = k > 0 ? k * std::pow(u, k - 1) : 0.0;
      return t.amplitude * (lead - 2.0 * t.p2 * std::pow(u, k + 1)) * e;
    }
    case FFamily::Sech2: {
      const double c = 1.0 / std::cosh(t.p1 * u);
      return -2.0 * t.p1 * t.amplitude * c * c * std::tanh(t.p1 * u);
    }
  }
  return 0.0;
}

// half-width r (about the term center) beyond which |F|, |F'| < 1e-16
double term_radius(const FTerm& t) {
  auto negligible = [&](double r) {
    FTerm c = t;
    c.shift = 0.0;
    double center = t.family == FFamily::GaussBump ? t.p2 : 0.0;
    for (double s : {-1.0, 1.0}) {
      const double x = center + s * r;
      if (std::abs(term_value(c, x)) >= kNegligible || std::abs(term_derivative(c, x)) >= kNegligible) return false;
    }
    return true;
  };
  double r = 1.0;
  while (!negligible(r)) r *= 1.25;
  return r;
}

double term_center(const FTerm& t) { return t.shift + (t.family == FFamily::GaussBump ? t.p2 : 0.0); }

std::vector<double> parse_params(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad numeric parameter '" + item + "'");
    }
    if (pos != item.size()) throw std::invalid_argument("bad numeric parameter '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

TestFunction TestFunction::gauss(double a, double c) {
  if (!(a > 0) || !std::isfinite(c)) throw std::invalid_argument("gauss: need a > 0 and finite c");
  TestFunction f;
  f.terms_.push_back({FFamily::GaussBump, a, c});
  return f;
}

TestFunction TestFunction::polygauss(int k, double a) {
  if (k < 0 || !(a > 0)) throw std::invalid_argument("polygauss: need k >= 0 and a > 0");
  TestFunction f;
  f.terms_.push_back({FFamily::PolyGauss, static_cast<double>(k), a});
  return f;
}

TestFunction TestFunction::sech2(double a) {
  if (!(a > 0)) throw std::invalid_argument("sech2: need a > 0");
  TestFunction f;
  f.terms_.push_back({FFamily::Sech2, a, 0.0});
  return f;
}

TestFunction TestFunction::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string fam = spec.substr(0, colon);
  const std::vector<double> p = colon == std::string::npos ? std::vector<double>{} : parse_params(spec.substr(colon + 1));
  if (fam == "zero") {
    if (!p.empty()) throw std::invalid_argument("zero takes no parameters");
    return zero();
  }
  if (fam == "gauss") {
    if (p.size() != 2) throw std::invalid_argument("gauss expects 2 parameters: a,c");
    return gauss(p[0], p[1]);
  }
  if (fam == "polygauss") {
    if (p.size() != 2 || p[0] != std::floor(p[0])) throw std::invalid_argument("polygauss expects k,a with integer k");
    return polygauss(static_cast<int>(p[0]), p[1]);
  }
  if (fam == "sech2") {
    if (p.size() != 1) throw std::invalid_argument("sech2 expects 1 parameter: a");
    return sech2(p[0]);
  }
  throw std::invalid_argument("unknown test function family '" + fam + "'");
}

double TestFunction::operator()(double x) const {
  double s = 0.0;
  for (const auto& t : terms_) s += term_value(t, x);
  return s;
}

double TestFunction::derivative(double x) const {
  double s = 0.0;
  for (const auto& t : terms_) s += term_derivative(t, x);
  return s;
}

Interval TestFunction::effective_support() const {
  if (terms_.empty()) return {0.0, 0.0};
  Interval e{kInf, -kInf};
  for (const auto& t : terms_) {
    const double c = term_center(t), r = term_radius(t);
    e.lo = std::min(e.lo, c - r);
    e.hi = std::max(e.hi, c + r);
  }
  return e;
}

double TestFunction::sup_abs() const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double m = std::abs(t.amplitude);
    if (t.family == FFamily::PolyGauss && t.p1 > 0) {
      // max of u^k e^{-a u^2} at u^2 = k / (2a)
      const double u = std::sqrt(t.p1 / (2.0 * t.p2));
      m *= std::pow(u, t.p1) * std::exp(-t.p2 * u * u);
    }
    s += m;
  }
  return s;
}

TestFunction TestFunction::shifted(double s) const {
  TestFunction f = *this;
  for (auto& t : f.terms_) t.shift += s;
  return f;
}

std::string TestFunction::describe() const {
  if (terms_.empty()) return "zero";
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (i) os << " + ";
    if (t.amplitude != 1.0) os << t.amplitude << "*";
    switch (t.family) {
      case FFamily::GaussBump:
        os << "gauss:" << t.p1 << "," << t.p2;
        break;
      case FFamily::PolyGauss:
        os << "polygauss:" << static_cast<int>(t.p1) << "," << t.p2;
        break;
      case FFamily::Sech2:
        os << "sech2:" << t.p1;
        break;
    }
    if (t.shift != 0.0) os << "@" << t.shift;
  }
  return os.str();
}

TestFunction operator+(const TestFunction& a, const TestFunction& b) {
  TestFunction f = a;
  f.terms_.insert(f.terms_.end(), b.terms_.begin(), b.terms_.end());
  return f;
}

TestFunction operator*(double c, const TestFunction& f) {
  if (c == 0.0) return TestFunction::zero();
  TestFunction g = f;
  for (auto& t : g.terms_) t.amplitude *= c;
  return g;
}

}  // namespace edgestat
