#include "schurcomp/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "schurcomp/kernels.hpp"

namespace schurcomp {

namespace {

void require_grid(int n, SpinLabel spin, const char* what) {
  if (!on_grid(n, spin)) {
    throw std::invalid_argument(std::string(what) + ": 2J=" + std::to_string(spin.two_j) +
                                " is not on the spin grid of n=" + std::to_string(n));
  }
}

// Geometric ratio (1-p)/p of consecutive Gibbs weights, kept in log form.
struct GibbsRatio {
  double ln_rho;      // ln((1-p)/p), -inf for p = 1, 0 for p = 1/2
  double ln_one_minus_rho;  // ln(1 - rho) = ln((2p-1)/p)

  explicit GibbsRatio(double p)
      : ln_rho(p == 1.0 ? kNegInf : std::log1p(-(2.0 * p - 1.0) / p)),
        ln_one_minus_rho(std::log((2.0 * p - 1.0) / p)) {}

  bool uniform() const { return ln_rho == 0.0; }
  bool pure() const { return ln_rho == kNegInf; }

  // ln sum_{k=0}^{len-1} rho^k
  double ln_geometric(std::int64_t len) const {
    if (len <= 0) return kNegInf;
    if (pure()) return 0.0;
    if (uniform()) return std::log(static_cast<double>(len));
    return std::log(-std::expm1(static_cast<double>(len) * ln_rho)) - ln_one_minus_rho;
  }

  // Mass of a normalized block of dimension dim below a window of length w.
  double slack(std::int64_t dim, std::int64_t w) const {
    if (w >= dim) return 0.0;
    if (pure()) return 0.0;
    if (uniform()) return static_cast<double>(dim - w) / static_cast<double>(dim);
    return std::exp(static_cast<double>(w) * ln_rho + ln_geometric(dim - w) - ln_geometric(dim));
  }
};

}  // namespace

bool on_grid(int n, SpinLabel spin) {
  return n >= 1 && spin.two_j >= 0 && spin.two_j <= n && (spin.two_j - n) % 2 == 0;
}

SpectralParam::SpectralParam(double p) : p_(p) {
  if (!(p >= 0.5 && p <= 1.0)) {
    throw std::domain_error("SpectralParam: p must lie in [1/2, 1] (the larger eigenvalue), got " +
                            std::to_string(p));
  }
  beta_ = p == 1.0 ? std::numeric_limits<double>::infinity() : 2.0 * std::atanh(2.0 * p - 1.0);
}

double DiagBlock::mass() const {
  double s = 0.0;
  for (double lw : logw) s += std::exp(lw);
  return s;
}

const BlockEntry* BlockDiagState::find(SpinLabel spin) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), spin,
                             [](const BlockEntry& e, SpinLabel s) { return e.spin < s; });
  if (it == entries.end() || it->spin != spin) return nullptr;
  return &*it;
}

double BlockDiagState::retained_mass() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.weight;
  return s;
}

std::vector<SpinLabel> spin_grid(int n) {
  if (n <= 0) throw std::domain_error("spin_grid: n must be positive");
  std::vector<SpinLabel> grid;
  grid.reserve(static_cast<std::size_t>(n / 2) + 1);
  for (int tj = n % 2; tj <= n; tj += 2) grid.emplace_back(tj);
  return grid;
}

std::uint64_t multiplicity(int n, SpinLabel spin) {
  require_grid(n, spin, "multiplicity");
  // m_J = C(n, k) - C(n, k-1), k = n/2 - J
  const int k = (n - spin.two_j) / 2;
  unsigned __int128 c = 1;
  unsigned __int128 prev = 0;
  constexpr unsigned __int128 limit = std::numeric_limits<std::uint64_t>::max();
  for (int i = 0; i < k; ++i) {
    prev = c;
    c = c * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
    if (c > limit) throw std::overflow_error("multiplicity: m_J exceeds 64 bits, use log_multiplicity");
  }
  return static_cast<std::uint64_t>(c - prev);
}

LogWeight log_multiplicity(int n, SpinLabel spin) {
  require_grid(n, spin, "log_multiplicity");
  const std::int64_t upper = (n + spin.two_j) / 2 + 1;
  const double ln = std::log(static_cast<double>(spin.dim())) - std::log(static_cast<double>(n) + 1.0) +
                    log_binomial(n + 1, upper).log();
  return LogWeight{ln};
}

double j0(int n, double p) { return (p - 0.5) * (static_cast<double>(n) + 1.0); }

SpinLabel nearest_grid_spin(int n, double j) {
  if (n <= 0) throw std::domain_error("nearest_grid_spin: n must be positive");
  const int parity = n % 2;
  const double x = 2.0 * j;
  if (!(x > parity)) return SpinLabel{parity};
  if (x >= n) return SpinLabel{n};
  const int lower = parity + 2 * static_cast<int>(std::floor((x - parity) / 2.0));
  const int upper = lower + 2;
  const int pick = (x - lower) < (upper - x) ? lower : upper;
  return SpinLabel{std::clamp(pick, parity, n)};
}

LogWeight log_spectral_weight(int n, double p, SpinLabel spin) {
  const SpectralParam param(p);
  require_grid(n, spin, "spectral_weight");
  // q_J = (2J+1)/((n+1) p) * B_{n+1}(n/2+J+1) * sum_{k=0}^{2J} rho^k
  const std::int64_t upper = (n + spin.two_j) / 2 + 1;
  const LogWeight pmf = binomial_pmf_log(static_cast<std::int64_t>(n) + 1, upper, param.p());
  if (pmf.is_zero()) return LogWeight::zero();
  const GibbsRatio ratio(param.p());
  const double ln = std::log(static_cast<double>(spin.dim())) - std::log(static_cast<double>(n) + 1.0) +
                    pmf.log() - std::log(param.p()) + ratio.ln_geometric(spin.dim());
  return LogWeight{std::min(ln, 0.0)};
}

double spectral_weight(int n, double p, SpinLabel spin) { return log_spectral_weight(n, p, spin).prob(); }

std::vector<double> log_spectral_distribution(int n, double p, Execution exec) {
  const SpectralParam param(p);
  return exec == Execution::serial ? kernels::log_spectral_weights_serial(n, param.p())
                                   : kernels::log_spectral_weights_omp(n, param.p());
}

DiagBlock gibbs_block(double p, SpinLabel spin, int window) {
  const SpectralParam param(p);
  if (spin.two_j < 0) throw std::domain_error("gibbs_block: negative spin");
  if (window < 1) throw std::invalid_argument("gibbs_block: window must be >= 1");
  const int dim = spin.dim();
  const int len = std::min(window, dim);
  const GibbsRatio ratio(param.p());
  DiagBlock block;
  block.spin = spin;
  block.logw.resize(static_cast<std::size_t>(len));
  // weight(a) = rho^a / sum_k rho^k
  const double ln_norm = ratio.ln_geometric(dim);
  for (int a = 0; a < len; ++a) {
    const double ln_pow = a == 0 ? 0.0 : (ratio.pure() ? kNegInf : a * ratio.ln_rho);
    block.logw[static_cast<std::size_t>(a)] = ln_pow - ln_norm;
  }
  block.slack = ratio.slack(dim, len);
  return block;
}

DiagBlock gibbs_block_tol(double p, SpinLabel spin, double window_tol) {
  const SpectralParam param(p);
  if (!(window_tol > 0.0 && window_tol < 1.0)) throw std::domain_error("gibbs_block_tol: tolerance outside (0,1)");
  const std::int64_t dim = spin.dim();
  const GibbsRatio ratio(param.p());
  std::int64_t w = 1;
  if (ratio.uniform()) {
    w = dim - static_cast<std::int64_t>(std::floor(window_tol * static_cast<double>(dim)));
  } else if (!ratio.pure()) {
    w = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::log(window_tol) / ratio.ln_rho) - 1);
    w = std::min(w, dim);
    while (w < dim && ratio.slack(dim, w) > window_tol) ++w;
  }
  return gibbs_block(p, spin, static_cast<int>(std::clamp<std::int64_t>(w, 1, dim)));
}

BoundedValue weighted_distance_diag(double alpha, const DiagBlock& a, double beta, const DiagBlock& b) {
  if (a.spin != b.spin) throw std::invalid_argument("trace_distance_diag: blocks at different J");
  if (alpha < 0.0 || beta < 0.0) throw std::domain_error("weighted_distance_diag: negative weight");
  const std::size_t len = std::max(a.window(), b.window());
  double l1 = 0.0;
  for (std::size_t i = 0; i < len; ++i) l1 += std::abs(alpha * a.weight(i) - beta * b.weight(i));
  const double sa = alpha * a.slack;
  const double sb = beta * b.slack;
  return {0.5 * l1 + 0.5 * std::abs(sa - sb), sa + sb};
}

BoundedValue trace_distance_diag(const DiagBlock& a, const DiagBlock& b) {
  return weighted_distance_diag(1.0, a, 1.0, b);
}

BlockDiagState block_state_of(int n, double p, double tail_tol, double window_tol, Execution exec) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0) || !(window_tol > 0.0 && window_tol < 1.0)) {
    throw std::domain_error("block_state_of: tolerances must lie in (0,1)");
  }
  const SpectralParam param(p);
  const auto logq = log_spectral_distribution(n, param.p(), exec);
  const std::size_t count = logq.size();
  std::vector<double> q(count);
  for (std::size_t g = 0; g < count; ++g) q[g] = std::exp(logq[g]);

  // below[g] = sum_{i<g} q_i, above[g] = sum_{i>g} q_i, summed from the small end.
  std::vector<double> below(count + 1, 0.0);
  for (std::size_t g = 0; g < count; ++g) below[g + 1] = below[g] + q[g];
  std::vector<double> above(count + 1, 0.0);
  for (std::size_t g = count; g-- > 0;) above[g] = above[g + 1] + q[g];

  const int parity = n % 2;
  std::size_t lo = static_cast<std::size_t>((nearest_grid_spin(n, j0(n, param.p())).two_j - parity) / 2);
  std::size_t hi = lo;
  while (below[lo] + above[hi + 1] > tail_tol) {
    const bool can_down = lo > 0;
    const bool can_up = hi + 1 < count;
    if (!can_down && !can_up) break;
    if (can_up && (!can_down || q[hi + 1] >= q[lo - 1])) {
      ++hi;
    } else {
      --lo;
    }
  }

  BlockDiagState state;
  state.n = n;
  state.tail_mass = below[lo] + above[hi + 1];
  state.entries.resize(hi - lo + 1);
  kernels::for_each_index(state.entries.size(), exec, [&](std::size_t i) {
    const std::size_t g = lo + i;
    const SpinLabel spin{parity + 2 * static_cast<int>(g)};
    state.entries[i] = BlockEntry{spin, q[g], gibbs_block_tol(param.p(), spin, window_tol)};
  });
  return state;
}

double shannon_entropy(std::span<const double> weights) {
  double h = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::domain_error("shannon_entropy: negative weight");
    h += entropy_term_bits(w);
  }
  return h;
}

}  // namespace schurcomp
