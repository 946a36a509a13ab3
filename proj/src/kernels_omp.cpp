#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "schurcomp/kernels.hpp"

namespace schurcomp::kernels {

namespace detail {
double clone_entry(const CloneStencil& st, std::span<const double> in, std::size_t b);
double spectral_entry(int n, double p, std::size_t g);
}  // namespace detail

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void clone_gather_omp(const CloneStencil& stencil, std::span<const double> in, std::span<double> out) {
  if (in.size() != stencil.in_len || out.size() != stencil.out_len) {
    throw std::invalid_argument("clone_gather: span sizes do not match the stencil");
  }
  const auto total = static_cast<long long>(out.size());
  // Small stencils are cheaper inline than a fork/join.
#pragma omp parallel for schedule(static) if (total * (stencil.band + 1) > 65536)
  for (long long b = 0; b < total; ++b) {
    out[static_cast<std::size_t>(b)] = detail::clone_entry(stencil, in, static_cast<std::size_t>(b));
  }
}

std::vector<double> log_spectral_weights_omp(int n, double p) {
  if (n <= 0) throw std::domain_error("log_spectral_weights: n must be positive");
  const auto count = static_cast<long long>(n / 2) + 1;
  std::vector<double> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static) if (count > 4096)
  for (long long g = 0; g < count; ++g) {
    out[static_cast<std::size_t>(g)] = detail::spectral_entry(n, p, static_cast<std::size_t>(g));
  }
  return out;
}

}  // namespace schurcomp::kernels
