#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "schurcomp/numerics.hpp"

namespace schurcomp {

/// Total angular momentum label, stored as 2J so half-integer spins are exact.
struct SpinLabel {
  int two_j = 0;

  constexpr SpinLabel() = default;
  constexpr explicit SpinLabel(int twice_j) : two_j(twice_j) {}
  static constexpr SpinLabel from_twice(int twice_j) { return SpinLabel{twice_j}; }

  constexpr double j() const { return 0.5 * two_j; }
  /// Dimension 2J+1 of the irreducible space.
  constexpr int dim() const { return two_j + 1; }
  friend constexpr auto operator<=>(SpinLabel, SpinLabel) = default;
};

/// True when twoJ <= n and twoJ has the parity of n.
bool on_grid(int n, SpinLabel spin);

/// Larger eigenvalue p of the single-qubit state and its inverse temperature.
class SpectralParam {
 public:
  /// Throws std::domain_error unless 1/2 <= p <= 1.
  explicit SpectralParam(double p);
  double p() const { return p_; }
  /// beta = 2 atanh(2p - 1); +inf for a pure state.
  double beta() const { return beta_; }

 private:
  double p_;
  double beta_;
};

/// How the data-parallel kernels are scheduled. Results are bitwise identical.
enum class Execution { serial, parallel };

struct Tolerances {
  /// Discarded q_J mass allowed outside the retained J-window.
  double tail_tol = 1e-12;
  /// Truncated mass allowed below the m-window of a single block.
  double window_tol = 1e-14;
};

/// Diagonal state of one spin-J irrep in the |J,m> basis. Entry a holds the
/// natural-log weight of m = J - a; mass below the window is in `slack`.
struct DiagBlock {
  SpinLabel spin;
  std::vector<double> logw;
  double slack = 0.0;

  std::size_t window() const { return logw.size(); }
  double weight(std::size_t a) const { return a < logw.size() ? std::exp(logw[a]) : 0.0; }
  /// Sum of the windowed weights (excludes slack).
  double mass() const;
};

/// A distance evaluated on truncated blocks: the true value lies within
/// [value - slack, value + slack].
struct BoundedValue {
  double value = 0.0;
  double slack = 0.0;
};

struct BlockEntry {
  SpinLabel spin;
  double weight = 0.0;
  DiagBlock block;
};

/// Block-diagonal state: q_J-weighted Gibbs blocks on a contiguous J-window,
/// ordered by increasing J, with the discarded spectral mass in tail_mass.
struct BlockDiagState {
  int n = 0;
  std::vector<BlockEntry> entries;
  double tail_mass = 0.0;

  const BlockEntry* find(SpinLabel spin) const;
  double retained_mass() const;
};

/// All J from (n mod 2)/2 to n/2, ascending. Throws for n <= 0.
std::vector<SpinLabel> spin_grid(int n);

/// Number of copies m_J of the spin-J irrep in n qubits. Exact; throws
/// std::overflow_error if it does not fit in 64 bits (use log_multiplicity).
std::uint64_t multiplicity(int n, SpinLabel spin);
LogWeight log_multiplicity(int n, SpinLabel spin);

/// J0 = (p - 1/2)(n + 1).
double j0(int n, double p);

/// Grid point of parity n nearest to the real spin `j`, ties toward larger J,
/// clamped to the grid.
SpinLabel nearest_grid_spin(int n, double j);

/// q_J = m_J sum_m p^(n/2+m) (1-p)^(n/2-m), evaluated in log domain.
LogWeight log_spectral_weight(int n, double p, SpinLabel spin);
double spectral_weight(int n, double p, SpinLabel spin);

/// ln q_J for every grid point, index g <-> twoJ = (n mod 2) + 2g.
std::vector<double> log_spectral_distribution(int n, double p, Execution exec = Execution::parallel);

/// Gibbs block rho_J restricted to its top `window` entries. A window larger
/// than 2J+1 is clamped to the full block.
DiagBlock gibbs_block(double p, SpinLabel spin, int window);

/// Gibbs block with the smallest window whose truncated mass <= window_tol.
DiagBlock gibbs_block_tol(double p, SpinLabel spin, double window_tol);

/// 1/2 || alpha a - beta b ||_1 for diagonal blocks at the same J.
BoundedValue weighted_distance_diag(double alpha, const DiagBlock& a, double beta, const DiagBlock& b);

/// Trace distance between two diagonal blocks at the same J.
BoundedValue trace_distance_diag(const DiagBlock& a, const DiagBlock& b);

/// Block model of rho^{(x)n}: the smallest contiguous J-window around the grid
/// point nearest J0 with discarded mass <= tail_tol; blocks windowed at window_tol.
BlockDiagState block_state_of(int n, double p, double tail_tol, double window_tol,
                              Execution exec = Execution::parallel);
inline BlockDiagState block_state_of(int n, double p, const Tolerances& tol,
                                     Execution exec = Execution::parallel) {
  return block_state_of(n, p, tol.tail_tol, tol.window_tol, exec);
}

/// -sum w log2 w in bits. Throws on negative weights.
double shannon_entropy(std::span<const double> weights);

}  // namespace schurcomp
