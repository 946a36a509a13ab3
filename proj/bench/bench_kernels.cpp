// Serial reference versus OpenMP kernels. Run with OMP_NUM_THREADS set to
// the core count; on a single core the two columns should match.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <vector>

#include "schurcomp/blocks.hpp"
#include "schurcomp/kernels.hpp"
#include "schurcomp/protocols.hpp"

using namespace schurcomp;

namespace {

void BM_SpectralWeightsSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::log_spectral_weights_serial(n, 0.8));
  state.SetItemsProcessed(state.iterations() * (n / 2 + 1));
}

void BM_SpectralWeightsOmp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::log_spectral_weights_omp(n, 0.8));
  state.SetItemsProcessed(state.iterations() * (n / 2 + 1));
}

template <bool Parallel>
void BM_CloneGather(benchmark::State& state) {
  const int two_j = static_cast<int>(state.range(0));
  const int two_k = two_j + two_j / 10;
  const DiagBlock in = gibbs_block(0.7, SpinLabel{two_j}, std::min(two_j + 1, 400));
  const auto stencil = kernels::make_clone_stencil(two_j, two_k, in.window());
  std::vector<double> out(stencil.out_len);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::clone_gather_omp(stencil, in.logw, out);
    } else {
      kernels::clone_gather_serial(stencil, in.logw, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

template <Execution Exec>
void BM_KnownProtocolError(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(known_protocol_error(n, 0.8, {}, Exec).epsilon);
}

template <Execution Exec>
void BM_FullProtocolError(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(full_protocol_error(n, 0.8, auto_r(n), {}, Exec).epsilon);
}

}  // namespace

BENCHMARK(BM_SpectralWeightsSerial)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SpectralWeightsOmp)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMicrosecond);
BENCHMARK_TEMPLATE(BM_CloneGather, false)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK_TEMPLATE(BM_CloneGather, true)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK_TEMPLATE(BM_KnownProtocolError, Execution::serial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_KnownProtocolError, Execution::parallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_FullProtocolError, Execution::serial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_FullProtocolError, Execution::parallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
