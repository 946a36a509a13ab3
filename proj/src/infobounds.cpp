#include "schurcomp/infobounds.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "schurcomp/kernels.hpp"

namespace schurcomp {

namespace {

struct SpectrumSums {
  double spectral_entropy = 0.0;
  double mean_log_dim = 0.0;
  double mean_log_mult = 0.0;
  double total = 0.0;
};

// Entropy pieces of the irrep-averaged state with weights q over the grid of n.
SpectrumSums spectrum_sums(int n, const std::vector<double>& q, Execution exec) {
  const std::size_t count = q.size();
  std::vector<double> h(count), d(count), m(count);
  kernels::for_each_index(count, exec, [&](std::size_t g) {
    const SpinLabel spin{n % 2 + 2 * static_cast<int>(g)};
    h[g] = entropy_term_bits(q[g]);
    d[g] = q[g] == 0.0 ? 0.0 : q[g] * std::log2(static_cast<double>(spin.dim()));
    m[g] = q[g] == 0.0 ? 0.0 : q[g] * log_multiplicity(n, spin).log() / std::numbers::ln2;
  });
  SpectrumSums s;
  for (std::size_t g = 0; g < count; ++g) {
    s.spectral_entropy += h[g];
    s.mean_log_dim += d[g];
    s.mean_log_mult += m[g];
    s.total += q[g];
  }
  return s;
}

HolevoReport assemble(const SpectrumSums& s, double per_state) {
  HolevoReport r;
  r.spectral_entropy_bits = s.spectral_entropy;
  r.mean_log_dim_bits = s.mean_log_dim;
  r.mean_log_mult_bits = s.mean_log_mult;
  r.avg_state_entropy_bits = s.spectral_entropy + s.mean_log_dim + s.mean_log_mult;
  r.per_state_entropy_bits = per_state;
  r.chi_bits = r.avg_state_entropy_bits - per_state;
  return r;
}

double prior_integrand(double p) {
  if (p <= 0.0 || p >= 1.0 || p == 0.5) return 0.0;
  return std::exp(prior_log_density_unnormalized(p));
}

}  // namespace

HolevoReport holevo_fixed_spectrum(int n, double p, Execution exec) {
  const SpectralParam param(p);
  const auto logq = log_spectral_distribution(n, param.p(), exec);
  std::vector<double> q(logq.size());
  for (std::size_t g = 0; g < q.size(); ++g) q[g] = std::exp(logq[g]);
  return assemble(spectrum_sums(n, q, exec), n * binary_entropy(param.p()));
}

double mu_nats(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::domain_error("mu_nats: eps outside [0,1]");
  return eps == 0.0 ? 0.0 : -eps * std::log(eps);
}

double holevo_bound_rhs(double chi_bits, double eps, double log2_dim) {
  if (!(eps >= 0.0 && eps < 1.0)) throw std::domain_error("holevo_bound_rhs: requires 0 <= eps < 1");
  return chi_bits - 2.0 * eps * log2_dim - 2.0 * mu_nats(eps) / std::numbers::ln2;
}

std::uint64_t sufficient_dim(int n) {
  std::uint64_t total = 0;
  for (const SpinLabel s : spin_grid(n)) total += static_cast<std::uint64_t>(s.dim());
  return total;
}

double prior_log_density_unnormalized(double p) {
  const double odd = std::abs(2.0 * p - 1.0);
  const double mixed = ((4.0 * p - 1.0) * std::log(p) + (4.0 * p - 3.0) * std::log1p(-p)) / (4.0 * p - 2.0);
  return 2.0 * std::log(odd) - mixed;
}

double prior_normalizer() {
  static const double value = [] {
    boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0;
    // Symmetric under p -> 1-p; integrating over (0, 1/2) keeps the singular
    // endpoint at p = 0, where p itself is exact.
    const double half = integrator.integrate(prior_integrand, 0.0, 0.5, 1e-13, &error);
    if (!(error < 1e-10 * half)) throw QuadratureError("prior_normalizer: tanh-sinh did not converge");
    return 2.0 * half;
  }();
  return value;
}

double full_model_prior_pdf(double p) {
  if (!(p > 0.0 && p < 1.0) || p == 0.5) {
    throw std::domain_error("full_model_prior_pdf: requires p in (0,1), p != 1/2");
  }
  return std::exp(prior_log_density_unnormalized(p)) / prior_normalizer();
}

int default_prior_panels(int n) {
  return std::max(32, static_cast<int>(std::ceil(2.0 * std::sqrt(static_cast<double>(n)))));
}

PriorGrid make_prior_grid(int panels) {
  if (panels < 1) throw std::invalid_argument("make_prior_grid: need at least one panel");
  using Rule = boost::math::quadrature::gauss<double, 10>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  // Boost stores the nonnegative half of a symmetric rule; x[0] = 0 for odd orders only.
  std::vector<std::pair<double, double>> rule;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      rule.emplace_back(0.0, w[i]);
    } else {
      rule.emplace_back(-x[i], w[i]);
      rule.emplace_back(x[i], w[i]);
    }
  }
  const double norm = prior_normalizer();
  const double h = (std::numbers::pi / 2.0) / panels;
  PriorGrid grid;
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * h;
    for (const auto& [xi, wi] : rule) {
      const double u = mid + 0.5 * h * xi;
      const double p = 0.5 * (1.0 + std::sin(u));
      if (!(p > 0.5 && p < 1.0)) continue;
      const double jac = 0.5 * std::cos(u);
      grid.nodes.push_back(p);
      // factor 2 folds (0, 1/2) onto (1/2, 1)
      grid.weights.push_back(2.0 * std::exp(prior_log_density_unnormalized(p)) / norm * jac * 0.5 * h * wi);
    }
  }
  return grid;
}

HolevoReport holevo_full_model(int n, const PriorGrid& grid, double norm_tol, Execution exec) {
  if (n < 2) throw std::domain_error("holevo_full_model: requires n >= 2");
  if (grid.nodes.empty() || grid.nodes.size() != grid.weights.size()) {
    throw std::invalid_argument("holevo_full_model: malformed quadrature grid");
  }
  std::vector<double> qbar(static_cast<std::size_t>(n / 2) + 1, 0.0);
  double per_state = 0.0;
  for (std::size_t k = 0; k < grid.nodes.size(); ++k) {
    const double p = grid.nodes[k];
    const auto logq = log_spectral_distribution(n, p, exec);
    for (std::size_t g = 0; g < qbar.size(); ++g) qbar[g] += grid.weights[k] * std::exp(logq[g]);
    per_state += grid.weights[k] * n * binary_entropy(p);
  }
  const SpectrumSums sums = spectrum_sums(n, qbar, exec);
  if (!(std::abs(sums.total - 1.0) <= norm_tol)) {
    throw QuadratureError("holevo_full_model: averaged q_J sum to " + std::to_string(sums.total) +
                          ", outside tolerance; refine the prior grid");
  }
  return assemble(sums, per_state);
}

HolevoReport holevo_full_model(int n, Execution exec) {
  return holevo_full_model(n, make_prior_grid(default_prior_panels(n)), 1e-8, exec);
}

}  // namespace schurcomp
