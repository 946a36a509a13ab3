#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "schurcomp/blocks.hpp"

namespace schurcomp {

/// Memory of an encoding: log2 of the quantum-memory dimension and log2 of
/// the number of classical symbols.
struct MemoryLedger {
  double qubits = 0.0;
  double cbits = 0.0;
};

/// Exact protocol error at g = e. The true worst-case trace distance lies in
/// [epsilon - slack, epsilon + slack].
struct ErrorReport {
  double epsilon = 0.0;
  double slack = 0.0;
  int n = 0;
  double p = 0.0;
  double r = std::numeric_limits<double>::quiet_NaN();  // NaN for the known-spectrum protocol
  Tolerances tol;
};

/// A contiguous run of grid spins [first, last] with its median f(i).
struct Interval {
  SpinLabel first;
  SpinLabel last;
  SpinLabel median;

  std::size_t size() const { return static_cast<std::size_t>((last.two_j - first.two_j) / 2 + 1); }
  bool contains(SpinLabel s) const { return first <= s && s <= last; }
};

/// Disjoint intervals tiling the spin grid of n qubits. Indices are 0-based:
/// L_1..L_t in 1-based notation are intervals 0..t-1 here.
class Partition {
 public:
  /// Builds from [first, last] twoJ ranges that must tile the grid in order.
  /// Each median is the member nearest the interval midpoint, ties up.
  static Partition from_ranges(int n, const std::vector<std::pair<int, int>>& two_j_ranges,
                               double r = std::numeric_limits<double>::quiet_NaN(), int width = 0);

  int n() const { return n_; }
  double r() const { return r_; }
  /// floor(r sqrt n), in J-steps (each step is 2 in twoJ units).
  int width() const { return width_; }
  std::size_t size() const { return intervals_.size(); }
  const std::vector<Interval>& intervals() const { return intervals_; }
  const Interval& interval(std::size_t i) const { return intervals_.at(i); }

  /// i(J). Throws for off-grid spins.
  std::size_t index_of(SpinLabel spin) const;
  /// f(J), the median of the interval holding J.
  SpinLabel median_of(SpinLabel spin) const { return intervals_[index_of(spin)].median; }

 private:
  int n_ = 0;
  double r_ = 0.0;
  int width_ = 0;
  std::vector<Interval> intervals_;
  std::vector<std::uint32_t> index_by_grid_;
};

/// Regular intervals of floor(r sqrt n) consecutive grid spins over J < n/2
/// (the last one possibly shorter) followed by the singleton {n/2}.
Partition build_partition(int n, double r);

/// r = 1/ln n, the default interval scale.
double auto_r(int n);

// --- known spectrum -------------------------------------------------------

/// Grid spin of the memory: J0 rounded to the grid.
SpinLabel known_target_spin(int n, double p);

/// sum_J q_J C_{J->J0g}(rho_J) as one block at J0g. The state's tail mass is
/// carried in the slack, so mass + slack = 1.
DiagBlock known_encode(const BlockDiagState& state, SpinLabel j0g, double window_tol = 1e-14,
                       Execution exec = Execution::parallel);

/// Decoder output: block K carries weight q_K and state C_{J0g->K}(encoded),
/// for every K retained by the reference state. Multiplicity registers are
/// left implicit.
BlockDiagState known_decode(const DiagBlock& encoded, const BlockDiagState& reference, double window_tol = 1e-14,
                            Execution exec = Execution::parallel);
BlockDiagState known_decode(const DiagBlock& encoded, int n, double p, const Tolerances& tol = {},
                            Execution exec = Execution::parallel);

ErrorReport known_protocol_error(int n, double p, const Tolerances& tol = {}, Execution exec = Execution::parallel);

MemoryLedger known_memory(int n, double p);

// --- full model -------------------------------------------------------------

/// Interval i's share of the encoder output: classical weight sum_{J in L_i} q_J
/// and the normalized quantum memory state at the median.
struct IntervalCode {
  std::size_t index = 0;
  double weight = 0.0;
  DiagBlock block;
};

struct FullEncoding {
  int n = 0;
  std::vector<IntervalCode> codes;  // ascending interval index, empty intervals omitted
  double tail_mass = 0.0;
};

FullEncoding full_encode(const BlockDiagState& state, const Partition& part, double window_tol = 1e-14,
                         Execution exec = Execution::parallel);

/// Sampling decoder: block K in L_i receives weight W_i / |L_i| and state
/// C_{f(i)->K}(sigma_i).
BlockDiagState full_decode(const FullEncoding& encoded, const Partition& part, double window_tol = 1e-14,
                           Execution exec = Execution::parallel);

/// Decoder without sampling: all of W_i lands on the median block.
BlockDiagState nosampling_decode(const FullEncoding& encoded, const Partition& part);

struct ErrorDecomposition {
  double eps1 = 0.0;  // adapter imprecision inside the retained window
  double eps2 = 0.0;  // interpolation of q_J by interval averages
  double eps3 = 0.0;  // everything outside the retained window
  double epsilon = 0.0;
  double slack = 0.0;
};

ErrorDecomposition full_error_decomposition(int n, double p, double r, const Tolerances& tol = {},
                                            Execution exec = Execution::parallel);
ErrorReport full_protocol_error(int n, double p, double r, const Tolerances& tol = {},
                                Execution exec = Execution::parallel);

MemoryLedger full_memory(int n, const Partition& part);

// --- spectral distributions -------------------------------------------------

struct SpectralPoint {
  SpinLabel spin;
  double weight = 0.0;
};

struct SpectralDistribution {
  std::vector<SpectralPoint> points;  // ascending J
  double tail_mass = 0.0;
};

SpectralDistribution output_spectral_distribution(const BlockDiagState& state);

/// L1 distance over the union of supports, tail masses compared as one entry.
double spectral_l1_distance(const SpectralDistribution& a, const SpectralDistribution& b);

/// Monte Carlo demonstration of the sampling decoder: draws J from the
/// retained q_J, then K uniformly from L_{i(J)}. Deterministic for a seed.
SpectralDistribution sample_decoder_spectrum(const BlockDiagState& state, const Partition& part,
                                             std::size_t samples, std::uint64_t seed);

}  // namespace schurcomp
