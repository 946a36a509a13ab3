#include "schurcomp/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "schurcomp/cloning.hpp"
#include "schurcomp/kernels.hpp"

namespace schurcomp {

namespace {

void require_protocol_regime(int n, double p, const char* what) {
  if (n < 2) throw std::domain_error(std::string(what) + ": requires n >= 2");
  if (!(p > 0.5 && p <= 1.0)) throw std::domain_error(std::string(what) + ": requires 1/2 < p <= 1");
}

std::size_t grid_index(int n, SpinLabel spin) { return static_cast<std::size_t>((spin.two_j - n % 2) / 2); }

// sum_i w_i * blocks_i as one block at `spin`; blocks must share that spin.
// The slack collects weighted input slack plus `extra_slack`.
DiagBlock mix_blocks(SpinLabel spin, std::span<const double> weights, std::span<const DiagBlock> blocks,
                     double extra_slack, Execution exec) {
  std::size_t len = 0;
  for (const auto& b : blocks) len = std::max(len, b.window());
  DiagBlock out;
  out.spin = spin;
  out.logw.assign(len, kNegInf);
  kernels::for_each_index(len, exec, [&](std::size_t idx) {
    std::vector<double> terms;
    terms.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (idx < blocks[i].window() && weights[i] > 0.0) terms.push_back(std::log(weights[i]) + blocks[i].logw[idx]);
    }
    out.logw[idx] = logsumexp(std::span<const double>(terms));
  });
  double slack = extra_slack;
  for (std::size_t i = 0; i < blocks.size(); ++i) slack += weights[i] * blocks[i].slack;
  out.slack = slack;
  return out;
}

}  // namespace

// --- partition ----------------------------------------------------------------

Partition Partition::from_ranges(int n, const std::vector<std::pair<int, int>>& two_j_ranges, double r, int width) {
  if (n < 1) throw std::domain_error("Partition: n must be positive");
  if (two_j_ranges.empty()) throw std::invalid_argument("Partition: no intervals");
  Partition part;
  part.n_ = n;
  part.r_ = r;
  part.width_ = width;
  part.index_by_grid_.assign(static_cast<std::size_t>(n / 2) + 1, 0);
  int expect = n % 2;
  for (const auto& [first, last] : two_j_ranges) {
    if (first != expect || last < first || !on_grid(n, SpinLabel{last})) {
      throw std::invalid_argument("Partition: ranges must tile the spin grid in ascending order");
    }
    Interval iv;
    iv.first = SpinLabel{first};
    iv.last = SpinLabel{last};
    iv.median = SpinLabel{first + 2 * static_cast<int>(iv.size() / 2)};
    for (int tj = first; tj <= last; tj += 2) {
      part.index_by_grid_[grid_index(n, SpinLabel{tj})] = static_cast<std::uint32_t>(part.intervals_.size());
    }
    part.intervals_.push_back(iv);
    expect = last + 2;
  }
  if (expect != n + 2) throw std::invalid_argument("Partition: ranges do not cover the spin grid");
  return part;
}

std::size_t Partition::index_of(SpinLabel spin) const {
  if (!on_grid(n_, spin)) throw std::invalid_argument("Partition::index_of: spin off the grid");
  return index_by_grid_[grid_index(n_, spin)];
}

Partition build_partition(int n, double r) {
  if (n < 1) throw std::domain_error("build_partition: n must be positive");
  const double scaled = r * std::sqrt(static_cast<double>(n));
  if (!(scaled >= 1.0)) throw std::domain_error("build_partition: requires r sqrt(n) >= 1");
  const int width = static_cast<int>(std::floor(scaled));
  const int parity = n % 2;
  std::vector<std::pair<int, int>> ranges;
  for (int first = parity; first < n; first += 2 * width) {
    ranges.emplace_back(first, std::min(first + 2 * (width - 1), n - 2));
  }
  ranges.emplace_back(n, n);
  return Partition::from_ranges(n, ranges, r, width);
}

double auto_r(int n) {
  if (n < 2) throw std::domain_error("auto_r: requires n >= 2");
  return 1.0 / std::log(static_cast<double>(n));
}

// --- known spectrum -------------------------------------------------------------

SpinLabel known_target_spin(int n, double p) {
  const SpectralParam param(p);
  return nearest_grid_spin(n, j0(n, param.p()));
}

DiagBlock known_encode(const BlockDiagState& state, SpinLabel j0g, double window_tol, Execution exec) {
  if (state.entries.empty()) throw std::invalid_argument("known_encode: empty state");
  if (!on_grid(state.n, j0g)) throw std::invalid_argument("known_encode: target spin off the grid");
  const std::size_t count = state.entries.size();
  std::vector<DiagBlock> cloned(count);
  std::vector<double> weights(count);
  kernels::for_each_index(count, exec, [&](std::size_t i) {
    cloned[i] = clone_diag(state.entries[i].block, j0g, window_tol, Execution::serial);
    weights[i] = state.entries[i].weight;
  });
  return mix_blocks(j0g, weights, cloned, state.tail_mass, exec);
}

BlockDiagState known_decode(const DiagBlock& encoded, const BlockDiagState& reference, double window_tol,
                            Execution exec) {
  if (!on_grid(reference.n, encoded.spin)) throw std::invalid_argument("known_decode: encoded spin off the grid");
  BlockDiagState out;
  out.n = reference.n;
  out.tail_mass = reference.tail_mass;
  out.entries.resize(reference.entries.size());
  kernels::for_each_index(out.entries.size(), exec, [&](std::size_t i) {
    const auto& ref = reference.entries[i];
    out.entries[i] = BlockEntry{ref.spin, ref.weight, clone_diag(encoded, ref.spin, window_tol, Execution::serial)};
  });
  return out;
}

BlockDiagState known_decode(const DiagBlock& encoded, int n, double p, const Tolerances& tol, Execution exec) {
  return known_decode(encoded, block_state_of(n, p, tol, exec), tol.window_tol, exec);
}

ErrorReport known_protocol_error(int n, double p, const Tolerances& tol, Execution exec) {
  require_protocol_regime(n, p, "known_protocol_error");
  const BlockDiagState state = block_state_of(n, p, tol, exec);
  const DiagBlock encoded = known_encode(state, known_target_spin(n, p), tol.window_tol, exec);

  const std::size_t count = state.entries.size();
  std::vector<BoundedValue> per_block(count);
  kernels::for_each_index(count, exec, [&](std::size_t i) {
    const auto& e = state.entries[i];
    const DiagBlock decoded = clone_diag(encoded, e.spin, tol.window_tol, Execution::serial);
    per_block[i] = weighted_distance_diag(e.weight, decoded, e.weight, e.block);
  });

  ErrorReport report;
  report.n = n;
  report.p = p;
  report.tol = tol;
  for (const auto& v : per_block) {
    report.epsilon += v.value;
    report.slack += v.slack;
  }
  // Blocks outside the retained window contribute q_K * [0, 1].
  report.slack += state.tail_mass;
  return report;
}

MemoryLedger known_memory(int n, double p) {
  if (!(p > 0.5 && p <= 1.0)) throw std::domain_error("known_memory: requires 1/2 < p <= 1");
  return {std::log2(static_cast<double>(known_target_spin(n, p).dim())), 0.0};
}

// --- full model -----------------------------------------------------------------

FullEncoding full_encode(const BlockDiagState& state, const Partition& part, double window_tol, Execution exec) {
  if (state.n != part.n()) throw std::invalid_argument("full_encode: partition built for a different n");
  FullEncoding enc;
  enc.n = state.n;
  enc.tail_mass = state.tail_mass;

  // Entries are sorted by J and intervals are contiguous, so groups are runs.
  std::vector<std::pair<std::size_t, std::size_t>> runs;  // [begin, end)
  for (std::size_t i = 0; i < state.entries.size();) {
    const std::size_t idx = part.index_of(state.entries[i].spin);
    std::size_t j = i + 1;
    while (j < state.entries.size() && part.index_of(state.entries[j].spin) == idx) ++j;
    runs.emplace_back(i, j);
    i = j;
  }

  std::vector<IntervalCode> codes(runs.size());
  kernels::for_each_index(runs.size(), exec, [&](std::size_t r) {
    const auto [begin, end] = runs[r];
    const std::size_t idx = part.index_of(state.entries[begin].spin);
    const SpinLabel median = part.interval(idx).median;
    double total = 0.0;
    for (std::size_t i = begin; i < end; ++i) total += state.entries[i].weight;
    std::vector<DiagBlock> cloned;
    std::vector<double> weights;
    for (std::size_t i = begin; i < end; ++i) {
      cloned.push_back(clone_diag(state.entries[i].block, median, window_tol, Execution::serial));
      weights.push_back(total > 0.0 ? state.entries[i].weight / total : 0.0);
    }
    codes[r] = IntervalCode{idx, total, mix_blocks(median, weights, cloned, 0.0, Execution::serial)};
  });
  for (auto& c : codes) {
    if (c.weight > 0.0) enc.codes.push_back(std::move(c));
  }
  return enc;
}

BlockDiagState full_decode(const FullEncoding& encoded, const Partition& part, double window_tol, Execution exec) {
  if (encoded.n != part.n()) throw std::invalid_argument("full_decode: partition built for a different n");
  struct Task {
    const IntervalCode* code;
    SpinLabel target;
    double weight;
  };
  std::vector<Task> tasks;
  for (const auto& code : encoded.codes) {
    const Interval& iv = part.interval(code.index);
    const double share = code.weight / static_cast<double>(iv.size());
    for (int tj = iv.first.two_j; tj <= iv.last.two_j; tj += 2) tasks.push_back({&code, SpinLabel{tj}, share});
  }
  BlockDiagState out;
  out.n = encoded.n;
  out.tail_mass = encoded.tail_mass;
  out.entries.resize(tasks.size());
  kernels::for_each_index(tasks.size(), exec, [&](std::size_t i) {
    const Task& t = tasks[i];
    out.entries[i] = BlockEntry{t.target, t.weight, clone_diag(t.code->block, t.target, window_tol, Execution::serial)};
  });
  return out;
}

BlockDiagState nosampling_decode(const FullEncoding& encoded, const Partition& part) {
  if (encoded.n != part.n()) throw std::invalid_argument("nosampling_decode: partition built for a different n");
  BlockDiagState out;
  out.n = encoded.n;
  out.tail_mass = encoded.tail_mass;
  for (const auto& code : encoded.codes) {
    out.entries.push_back(BlockEntry{part.interval(code.index).median, code.weight, code.block});
  }
  return out;
}

ErrorDecomposition full_error_decomposition(int n, double p, double r, const Tolerances& tol, Execution exec) {
  require_protocol_regime(n, p, "full_protocol_error");
  const BlockDiagState state = block_state_of(n, p, tol, exec);
  const Partition part = build_partition(n, r);
  const FullEncoding encoded = full_encode(state, part, tol.window_tol, exec);
  const BlockDiagState decoded = full_decode(encoded, part, tol.window_tol, exec);

  struct Term {
    bool retained = false;
    double q = 0.0;
    BoundedValue exact;
    double adapter = 0.0;
    double interpolation = 0.0;
  };
  const std::size_t count = decoded.entries.size();
  std::vector<Term> terms(count);
  kernels::for_each_index(count, exec, [&](std::size_t i) {
    const BlockEntry& out = decoded.entries[i];
    Term& t = terms[i];
    const BlockEntry* target = state.find(out.spin);
    DiagBlock local;
    const DiagBlock* rho = nullptr;
    if (target != nullptr) {
      t.retained = true;
      t.q = target->weight;
      rho = &target->block;
    } else {
      t.q = spectral_weight(n, p, out.spin);
      local = gibbs_block_tol(p, out.spin, tol.window_tol);
      rho = &local;
    }
    t.exact = weighted_distance_diag(out.weight, out.block, t.q, *rho);
    if (t.retained) {
      t.adapter = out.weight * trace_distance_diag(out.block, *rho).value;
      t.interpolation = 0.5 * std::abs(out.weight - t.q);
    }
  });

  ErrorDecomposition d;
  double outside_decoded_q = 0.0;  // tail spins the decoder reaches
  for (const auto& t : terms) {
    d.epsilon += t.exact.value;
    d.slack += t.exact.slack;
    if (t.retained) {
      d.eps1 += t.adapter;
      d.eps2 += t.interpolation;
    } else {
      d.eps3 += t.exact.value;
      outside_decoded_q += t.q;
    }
  }
  // Retained spins the decoder never reaches (only if an interval weight underflowed).
  std::vector<bool> reached(static_cast<std::size_t>(n / 2) + 1, false);
  for (const auto& o : decoded.entries) reached[grid_index(n, o.spin)] = true;
  for (const auto& e : state.entries) {
    if (!reached[grid_index(n, e.spin)]) {
      d.epsilon += 0.5 * e.weight;
      d.eps2 += 0.5 * e.weight;
    }
  }
  // Tail spins that receive nothing: 1/2 q_J each.
  const double unreached_tail = std::max(0.0, state.tail_mass - outside_decoded_q);
  d.epsilon += 0.5 * unreached_tail;
  d.eps3 += 0.5 * unreached_tail;
  // Dropped tail inputs move the output by at most their mass.
  d.slack += state.tail_mass;
  return d;
}

ErrorReport full_protocol_error(int n, double p, double r, const Tolerances& tol, Execution exec) {
  const ErrorDecomposition d = full_error_decomposition(n, p, r, tol, exec);
  ErrorReport report;
  report.epsilon = d.epsilon;
  report.slack = d.slack;
  report.n = n;
  report.p = p;
  report.r = r;
  report.tol = tol;
  return report;
}

MemoryLedger full_memory(int n, const Partition& part) {
  if (part.n() != n) throw std::invalid_argument("full_memory: partition built for a different n");
  int largest = 0;
  for (const auto& iv : part.intervals()) largest = std::max(largest, iv.median.two_j);
  return {std::log2(static_cast<double>(largest + 1)), std::log2(static_cast<double>(part.size()))};
}

// --- spectral distributions -------------------------------------------------------

SpectralDistribution output_spectral_distribution(const BlockDiagState& state) {
  SpectralDistribution dist;
  dist.tail_mass = state.tail_mass;
  dist.points.reserve(state.entries.size());
  for (const auto& e : state.entries) dist.points.push_back({e.spin, e.weight});
  std::sort(dist.points.begin(), dist.points.end(),
            [](const SpectralPoint& a, const SpectralPoint& b) { return a.spin < b.spin; });
  return dist;
}

double spectral_l1_distance(const SpectralDistribution& a, const SpectralDistribution& b) {
  double l1 = std::abs(a.tail_mass - b.tail_mass);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.points.size() || j < b.points.size()) {
    if (j == b.points.size() || (i < a.points.size() && a.points[i].spin < b.points[j].spin)) {
      l1 += std::abs(a.points[i++].weight);
    } else if (i == a.points.size() || b.points[j].spin < a.points[i].spin) {
      l1 += std::abs(b.points[j++].weight);
    } else {
      l1 += std::abs(a.points[i++].weight - b.points[j++].weight);
    }
  }
  return l1;
}

SpectralDistribution sample_decoder_spectrum(const BlockDiagState& state, const Partition& part,
                                             std::size_t samples, std::uint64_t seed) {
  if (state.entries.empty() || samples == 0) throw std::invalid_argument("sample_decoder_spectrum: nothing to sample");
  std::vector<double> q;
  for (const auto& e : state.entries) q.push_back(e.weight);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick_j(q.begin(), q.end());
  std::vector<std::size_t> counts(static_cast<std::size_t>(state.n / 2) + 1, 0);
  for (std::size_t s = 0; s < samples; ++s) {
    const SpinLabel j = state.entries[pick_j(rng)].spin;
    const Interval& iv = part.interval(part.index_of(j));
    std::uniform_int_distribution<int> pick_k(0, static_cast<int>(iv.size()) - 1);
    const SpinLabel k{iv.first.two_j + 2 * pick_k(rng)};
    ++counts[grid_index(state.n, k)];
  }
  SpectralDistribution dist;
  for (std::size_t g = 0; g < counts.size(); ++g) {
    if (counts[g] == 0) continue;
    dist.points.push_back({SpinLabel{state.n % 2 + 2 * static_cast<int>(g)},
                           static_cast<double>(counts[g]) / static_cast<double>(samples)});
  }
  return dist;
}

}  // namespace schurcomp
