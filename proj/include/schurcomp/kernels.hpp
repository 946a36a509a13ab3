#pragma once

// Data-parallel kernels. Every kernel has a serial reference and an OpenMP
// version; both evaluate each output element with the same operation order,
// so their results are bitwise identical.

#include <cstddef>
#include <span>
#include <vector>

#include "schurcomp/blocks.hpp"

namespace schurcomp::kernels {

int max_threads();

/// ln q_J for every grid point of n qubits.
std::vector<double> log_spectral_weights_serial(int n, double p);
std::vector<double> log_spectral_weights_omp(int n, double p);

/// Precomputed log-binomial coefficients of the diagonal cloning map
/// C_{J->K}: entry a of the input window (m = J - a) feeds output entries b
/// (k = K - b) in a band of width |2K - 2J| + 1.
struct CloneStencil {
  int two_j = 0;
  int two_k = 0;
  int band = 0;              // |2K - 2J| qubits added or traced out
  std::size_t in_len = 0;
  std::size_t out_len = 0;
  double ln_scale = 0.0;     // ln((2J+1)/(2K+1)) when cloning up, else 0
  std::vector<double> ln_src;   // ln C(2J, a)
  std::vector<double> ln_dst;   // ln C(2K, b)
  std::vector<double> ln_band;  // ln C(band, d)

  bool upward() const { return two_k > two_j; }
};

CloneStencil make_clone_stencil(int two_j, int two_k, std::size_t in_len);

/// out[b] = ln sum_a exp(in[a]) T(a -> b); out.size() == stencil.out_len.
void clone_gather_serial(const CloneStencil& stencil, std::span<const double> in, std::span<double> out);
void clone_gather_omp(const CloneStencil& stencil, std::span<const double> in, std::span<double> out);

/// Runs body(i) for i in [0, count). Work items must write disjoint outputs.
template <class Body>
void for_each_index(std::size_t count, Execution exec, Body&& body) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const auto total = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < total; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace schurcomp::kernels
