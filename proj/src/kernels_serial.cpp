#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "schurcomp/kernels.hpp"

namespace schurcomp::kernels {

namespace detail {

// Shared by both schedules so the arithmetic is identical.
double clone_entry(const CloneStencil& st, std::span<const double> in, std::size_t b) {
  const auto D = static_cast<std::size_t>(st.band);
  std::size_t lo;
  std::size_t hi;  // inclusive
  if (st.upward()) {
    lo = b > D ? b - D : 0;
    hi = std::min(st.in_len - 1, b);
  } else {
    lo = b;
    hi = std::min(st.in_len - 1, b + D);
  }
  if (lo > hi) return kNegInf;
  auto term = [&](std::size_t a) {
    if (st.upward()) return in[a] + st.ln_scale + st.ln_band[b - a] + st.ln_src[a] - st.ln_dst[b];
    return in[a] + st.ln_band[a - b] + st.ln_dst[b] - st.ln_src[a];
  };
  double top = kNegInf;
  for (std::size_t a = lo; a <= hi; ++a) {
    if (in[a] == kNegInf) continue;
    top = std::max(top, term(a));
  }
  if (top == kNegInf) return kNegInf;
  double acc = 0.0;
  for (std::size_t a = lo; a <= hi; ++a) {
    if (in[a] == kNegInf) continue;
    acc += std::exp(term(a) - top);
  }
  return top + std::log(acc);
}

double spectral_entry(int n, double p, std::size_t g) {
  return log_spectral_weight(n, p, SpinLabel{n % 2 + 2 * static_cast<int>(g)}).log();
}

}  // namespace detail

CloneStencil make_clone_stencil(int two_j, int two_k, std::size_t in_len) {
  if (two_j < 0 || two_k < 0) throw std::domain_error("make_clone_stencil: negative spin");
  if (in_len == 0 || in_len > static_cast<std::size_t>(two_j) + 1) {
    throw std::invalid_argument("make_clone_stencil: input window must be within 1..2J+1");
  }
  CloneStencil st;
  st.two_j = two_j;
  st.two_k = two_k;
  st.band = std::abs(two_k - two_j);
  st.in_len = in_len;
  if (st.upward()) {
    st.out_len = in_len + static_cast<std::size_t>(st.band);
    st.ln_scale = std::log(static_cast<double>(two_j + 1)) - std::log(static_cast<double>(two_k + 1));
  } else {
    st.out_len = std::min(in_len, static_cast<std::size_t>(two_k) + 1);
  }
  st.ln_src.resize(in_len);
  for (std::size_t a = 0; a < in_len; ++a) st.ln_src[a] = log_binomial(two_j, static_cast<std::int64_t>(a)).log();
  st.ln_dst.resize(st.out_len);
  for (std::size_t b = 0; b < st.out_len; ++b) st.ln_dst[b] = log_binomial(two_k, static_cast<std::int64_t>(b)).log();
  st.ln_band.resize(static_cast<std::size_t>(st.band) + 1);
  for (int d = 0; d <= st.band; ++d) st.ln_band[static_cast<std::size_t>(d)] = log_binomial(st.band, d).log();
  return st;
}

void clone_gather_serial(const CloneStencil& stencil, std::span<const double> in, std::span<double> out) {
  if (in.size() != stencil.in_len || out.size() != stencil.out_len) {
    throw std::invalid_argument("clone_gather: span sizes do not match the stencil");
  }
  for (std::size_t b = 0; b < out.size(); ++b) out[b] = detail::clone_entry(stencil, in, b);
}

std::vector<double> log_spectral_weights_serial(int n, double p) {
  if (n <= 0) throw std::domain_error("log_spectral_weights: n must be positive");
  const std::size_t count = static_cast<std::size_t>(n / 2) + 1;
  std::vector<double> out(count);
  for (std::size_t g = 0; g < count; ++g) out[g] = detail::spectral_entry(n, p, g);
  return out;
}

}  // namespace schurcomp::kernels
