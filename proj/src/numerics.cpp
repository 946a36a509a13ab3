#include "schurcomp/numerics.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

namespace schurcomp {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(what) + ": probability outside [0,1]: " + std::to_string(p));
  }
}

}  // namespace

LogWeight LogWeight::from_prob(double prob) {
  if (!(prob >= 0.0)) throw std::domain_error("LogWeight::from_prob: negative or NaN probability");
  return LogWeight{std::log(prob)};
}

namespace detail {

double stirlerr(double n) {
  constexpr double S0 = 1.0 / 12.0;
  constexpr double S1 = 1.0 / 360.0;
  constexpr double S2 = 1.0 / 1260.0;
  constexpr double S3 = 1.0 / 1680.0;
  constexpr double S4 = 1.0 / 1188.0;
  if (n <= 15.0) {
    if (n == 0.0) return 0.0;  // limit convention, never used with a weight
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * std::log(2.0 * std::numbers::pi);
  }
  const double nn = n * n;
  if (n > 500.0) return (S0 - S1 / nn) / n;
  if (n > 80.0) return (S0 - (S1 - S2 / nn) / nn) / n;
  if (n > 35.0) return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n;
  return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n;
}

double bd0(double x, double np) {
  if (std::abs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    const double v2 = v * v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v2;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

}  // namespace detail

LogWeight log_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::domain_error("log_binomial: n must be nonnegative");
  if (k < 0 || k > n) return LogWeight::zero();
  const std::int64_t lo = std::min(k, n - k);
  if (lo == 0) return LogWeight::one();
  if (lo == 1) return LogWeight{std::log(static_cast<double>(n))};
  // ln C(n,k) = n H(k/n) + 1/2 ln(n / (2 pi k (n-k))) + stirlerr terms
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(lo);
  const double rest = nd - kd;
  const double entropy = kd * std::log(nd / kd) + rest * std::log1p(kd / rest);
  const double gauss = 0.5 * (std::log(nd) - std::log(2.0 * std::numbers::pi * kd) - std::log(rest));
  const double corr = detail::stirlerr(nd) - detail::stirlerr(kd) - detail::stirlerr(rest);
  return LogWeight{entropy + gauss + corr};
}

LogWeight binomial_pmf_log(std::int64_t trials, std::int64_t k, double p) {
  require_probability(p, "binomial_pmf_log");
  if (trials < 0) throw std::domain_error("binomial_pmf_log: negative trial count");
  if (k < 0 || k > trials) return LogWeight::zero();
  const double q = 1.0 - p;
  if (p == 0.0) return k == 0 ? LogWeight::one() : LogWeight::zero();
  if (q == 0.0) return k == trials ? LogWeight::one() : LogWeight::zero();
  const double n = static_cast<double>(trials);
  if (k == 0) return LogWeight{n * std::log1p(-p)};
  if (k == trials) return LogWeight{n * std::log(p)};
  const double x = static_cast<double>(k);
  const double lc = detail::stirlerr(n) - detail::stirlerr(x) - detail::stirlerr(n - x) -
                    detail::bd0(x, n * p) - detail::bd0(n - x, n * q);
  const double lf = std::log(2.0 * std::numbers::pi) + std::log(x) + std::log1p(-x / n);
  return LogWeight{lc - 0.5 * lf};
}

LogWeight logsumexp(std::span<const LogWeight> terms) {
  double hi = kNegInf;
  for (const auto& t : terms) hi = std::max(hi, t.log());
  if (hi == kNegInf) return LogWeight::zero();
  double acc = 0.0;
  for (const auto& t : terms) acc += std::exp(t.log() - hi);
  return LogWeight{hi + std::log(acc)};
}

double logsumexp(std::span<const double> log_terms) {
  double hi = kNegInf;
  for (double t : log_terms) hi = std::max(hi, t);
  if (hi == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double t : log_terms) acc += std::exp(t - hi);
  return hi + std::log(acc);
}

double entropy_term_bits(double x) {
  if (x < 0.0) throw std::domain_error("entropy_term_bits: negative weight");
  if (x == 0.0) return 0.0;
  return -x * std::log2(x);
}

double binary_entropy(double p) {
  require_probability(p, "binary_entropy");
  return entropy_term_bits(p) + entropy_term_bits(1.0 - p);
}

}  // namespace schurcomp
