#pragma once

#include "schurcomp/blocks.hpp"

namespace schurcomp {

/// Source and target spins of a universal cloning map C_{J->K}.
struct CloneSpec {
  SpinLabel from;
  SpinLabel to;

  /// |J - K| / J from exact 2J integers; requires J > 0.
  double delta() const;
};

/// Applies C_{J->K} to a diagonal block. For K >= J this is optimal cloning
/// onto 2K qubits; for K < J it traces out 2(J-K) qubits. The output window
/// keeps the top entries whose cumulative mass reaches 1 - window_tol; the
/// dropped mass and the input slack both go to the output slack.
DiagBlock clone_diag(const DiagBlock& input, SpinLabel target, double window_tol = 1e-14,
                     Execution exec = Execution::parallel);

/// Trace distance between C_{J->K}(rho_J) and rho_K for Gibbs blocks at
/// spectrum p, with the block windows chosen from window_tol.
BoundedValue clone_error(double p, SpinLabel from, SpinLabel to, double window_tol = 1e-14,
                         Execution exec = Execution::parallel);

/// Same, with an explicit input window length for rho_J.
BoundedValue clone_error_window(double p, SpinLabel from, SpinLabel to, int window, double window_tol = 1e-14,
                                Execution exec = Execution::parallel);

/// delta^(1-s): right-hand side of the Gibbs conversion bound for the
/// unhalved trace norm, leading order only.
double lemma1_bound(double delta, double s);

}  // namespace schurcomp
