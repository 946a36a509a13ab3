#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "schurcomp/blocks.hpp"

namespace schurcomp {

/// Holevo information of a group-averaged ensemble of n-qubit states, in bits,
/// with the pieces of the average-state entropy.
struct HolevoReport {
  double chi_bits = 0.0;
  double avg_state_entropy_bits = 0.0;
  double per_state_entropy_bits = 0.0;
  double spectral_entropy_bits = 0.0;  // H({q_J})
  double mean_log_dim_bits = 0.0;      // sum_J q_J log2(2J+1)
  double mean_log_mult_bits = 0.0;     // sum_J q_J log2 m_J
};

/// chi for {rho_g^(x)n, dg} at fixed spectrum p. Uses the full q_J vector,
/// no truncation.
HolevoReport holevo_fixed_spectrum(int n, double p, Execution exec = Execution::parallel);

/// mu(eps) = -eps ln eps, in nats.
double mu_nats(double eps);

/// chi - 2 eps log2_dim - 2 mu(eps)/ln 2, all in bits.
double holevo_bound_rhs(double chi_bits, double eps, double log2_dim);

/// sum_J (2J+1) over the spin grid; (n/2+1)^2 for even n.
std::uint64_t sufficient_dim(int n);

// --- full model ---------------------------------------------------------------

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// c(p) = 2 ln|2p-1| - [(4p-1) ln p + (4p-3) ln(1-p)] / (4p-2).
double prior_log_density_unnormalized(double p);

/// int_0^1 exp(c(p)) dp, computed once by tanh-sinh quadrature.
double prior_normalizer();

/// f(p) = exp(c(p)) / normalizer. Rejects p outside (0,1) and p = 1/2.
double full_model_prior_pdf(double p);

/// Quadrature nodes on (1/2, 1) carrying the folded prior: sum_k w_k g(p_k)
/// approximates int_0^1 f(p) g(p) dp for g symmetric under p -> 1-p.
struct PriorGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Composite 10-point Gauss-Legendre in u, with p = (1 + sin u)/2.
PriorGrid make_prior_grid(int panels);

/// Panel count that resolves the 1/sqrt(n)-wide peaks of q_J(p).
int default_prior_panels(int n);

/// chi(U) for the full-model ensemble {rho^(x)n, dg f(p) dp}. Throws
/// QuadratureError when the averaged q_J fail to normalize within norm_tol.
HolevoReport holevo_full_model(int n, const PriorGrid& grid, double norm_tol = 1e-8,
                               Execution exec = Execution::parallel);
HolevoReport holevo_full_model(int n, Execution exec = Execution::parallel);

}  // namespace schurcomp
