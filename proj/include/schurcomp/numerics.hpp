#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>

namespace schurcomp {

/// A probability magnitude carried as its natural logarithm.
/// The default value is an exact zero (ln 0 = -inf). Never NaN.
class LogWeight {
 public:
  constexpr LogWeight() = default;
  constexpr explicit LogWeight(double ln) : ln_(ln) {}

  /// Throws std::domain_error for negative or NaN probabilities.
  static LogWeight from_prob(double prob);
  static constexpr LogWeight zero() { return LogWeight{}; }
  static constexpr LogWeight one() { return LogWeight{0.0}; }

  constexpr double log() const { return ln_; }
  double prob() const { return std::exp(ln_); }
  constexpr bool is_zero() const { return ln_ == -std::numeric_limits<double>::infinity(); }

  friend constexpr LogWeight operator*(LogWeight a, LogWeight b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return LogWeight{a.ln_ + b.ln_};
  }
  friend constexpr LogWeight operator/(LogWeight a, LogWeight b) {
    if (a.is_zero()) return zero();
    return LogWeight{a.ln_ - b.ln_};
  }
  friend constexpr auto operator<=>(LogWeight, LogWeight) = default;

 private:
  double ln_ = -std::numeric_limits<double>::infinity();
};

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// ln C(n, k); -inf outside 0 <= k <= n. Requires n >= 0.
LogWeight log_binomial(std::int64_t n, std::int64_t k);

/// ln[C(trials,k) p^k (1-p)^(trials-k)], evaluated with Loader's saddle-point
/// split so the result keeps full relative precision for trials ~ 1e6.
LogWeight binomial_pmf_log(std::int64_t trials, std::int64_t k, double p);

/// ln sum exp(terms), max-shifted. -inf for an empty or all-zero input.
LogWeight logsumexp(std::span<const LogWeight> terms);
double logsumexp(std::span<const double> log_terms);

/// Binary entropy in bits with 0 log 0 = 0.
double binary_entropy(double p);

/// -x log2 x with the 0 log 0 = 0 convention.
double entropy_term_bits(double x);

namespace detail {
// ln n! - [(n + 1/2) ln n - n + ln sqrt(2 pi)]
double stirlerr(double n);
// x ln(x/np) + np - x, cancellation-free
double bd0(double x, double np);
}  // namespace detail

}  // namespace schurcomp
