#ifndef EDGESTAT_SPECFUN_HPP
#define EDGESTAT_SPECFUN_HPP

namespace edgestat {

struct AiryPair {
  double ai;
  double aip;
};

/// Ai(x). Returns 0 for x > 120.
double airy_ai(double x);
/// Ai'(x). Returns 0 for x > 120.
double airy_ai_prime(double x);
/// Ai and Ai' from one evaluation.
AiryPair airy_pair(double x);

/// AI(x) = int_{-inf}^x Ai(y) dy.
double airy_primitive(double x);
/// int_x^inf Ai(y) dy, accurate in relative terms for large x.
double airy_tail(double x);
/// B(x) = 2 AI(x) - 1.
double b_function(double x);

/// log Gamma(x) for x > 0; throws std::domain_error otherwise.
double log_gamma(double x);

/// k-th zero of Ai (k >= 1), negative.
double airy_ai_zero(int k);

namespace detail {
struct AiryPairLD {
  long double ai;
  long double aip;
};
AiryPairLD airy_series(long double x);
AiryPairLD airy_asymptotic(long double x);
AiryPairLD airy_pair_ld(long double x);
}  // namespace detail

}  // namespace edgestat

#endif
