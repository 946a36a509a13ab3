#include "schurcomp/cloning.hpp"

#include <cmath>
#include <stdexcept>

#include "schurcomp/kernels.hpp"

namespace schurcomp {

double CloneSpec::delta() const {
  if (from.two_j <= 0) throw std::domain_error("CloneSpec::delta: source spin must be positive");
  return static_cast<double>(std::abs(to.two_j - from.two_j)) / static_cast<double>(from.two_j);
}

DiagBlock clone_diag(const DiagBlock& input, SpinLabel target, double window_tol, Execution exec) {
  if (target.two_j < 0) throw std::domain_error("clone_diag: negative target spin");
  if (input.logw.empty() || input.window() > static_cast<std::size_t>(input.spin.dim())) {
    throw std::invalid_argument("clone_diag: input window must be within 1..2J+1");
  }
  if (std::abs(input.mass() + input.slack - 1.0) > 1e-10) {
    throw std::invalid_argument("clone_diag: input block is not normalized");
  }
  if (target == input.spin) return input;

  const auto stencil = kernels::make_clone_stencil(input.spin.two_j, target.two_j, input.window());
  std::vector<double> out(stencil.out_len);
  if (exec == Execution::serial) {
    kernels::clone_gather_serial(stencil, input.logw, out);
  } else {
    kernels::clone_gather_omp(stencil, input.logw, out);
  }

  // Smallest top window whose dropped tail is <= window_tol.
  std::size_t keep = out.size();
  double dropped = 0.0;
  while (keep > 1) {
    const double next = dropped + std::exp(out[keep - 1]);
    if (next > window_tol) break;
    dropped = next;
    --keep;
  }
  out.resize(keep);

  DiagBlock result;
  result.spin = target;
  result.logw = std::move(out);
  result.slack = input.slack + dropped;
  return result;
}

namespace {

void require_error_regime(double p, SpinLabel from, SpinLabel to) {
  if (!(p > 0.5 && p <= 1.0)) throw std::domain_error("clone_error: requires 1/2 < p <= 1");
  if (from.two_j < 1 || to.two_j < 1) throw std::domain_error("clone_error: requires J, K >= 1/2");
}

}  // namespace

BoundedValue clone_error_window(double p, SpinLabel from, SpinLabel to, int window, double window_tol,
                                Execution exec) {
  require_error_regime(p, from, to);
  const DiagBlock source = gibbs_block(p, from, window);
  const DiagBlock target = gibbs_block_tol(p, to, window_tol);
  return trace_distance_diag(clone_diag(source, to, window_tol, exec), target);
}

BoundedValue clone_error(double p, SpinLabel from, SpinLabel to, double window_tol, Execution exec) {
  require_error_regime(p, from, to);
  const DiagBlock source = gibbs_block_tol(p, from, window_tol);
  const DiagBlock target = gibbs_block_tol(p, to, window_tol);
  return trace_distance_diag(clone_diag(source, to, window_tol, exec), target);
}

double lemma1_bound(double delta, double s) {
  if (!(delta >= 0.0 && delta < 1.0)) throw std::domain_error("lemma1_bound: delta must lie in [0,1)");
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("lemma1_bound: s must lie in (0,1)");
  return std::pow(delta, 1.0 - s);
}

}  // namespace schurcomp
