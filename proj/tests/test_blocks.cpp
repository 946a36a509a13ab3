#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <vector>

#include "schurcomp/blocks.hpp"

namespace mp = boost::multiprecision;
using namespace schurcomp;

TEST(SpinGrid, Examples) {
  const auto even = spin_grid(2);
  ASSERT_EQ(even.size(), 2u);
  EXPECT_EQ(even[0].two_j, 0);
  EXPECT_EQ(even[1].two_j, 2);

  const auto odd = spin_grid(3);
  ASSERT_EQ(odd.size(), 2u);
  EXPECT_EQ(odd[0].j(), 0.5);
  EXPECT_EQ(odd[1].j(), 1.5);

  const auto ten = spin_grid(10);
  EXPECT_EQ(ten.size(), 6u);
  EXPECT_EQ(ten.back().two_j, 10);

  EXPECT_THROW(spin_grid(0), std::domain_error);
  EXPECT_THROW(spin_grid(-3), std::domain_error);
}

TEST(SpinGrid, OnGridParity) {
  EXPECT_TRUE(on_grid(5, SpinLabel{3}));
  EXPECT_FALSE(on_grid(5, SpinLabel{2}));
  EXPECT_FALSE(on_grid(5, SpinLabel{7}));
  EXPECT_TRUE(on_grid(4, SpinLabel{0}));
}

TEST(Multiplicity, Examples) {
  EXPECT_EQ(multiplicity(2, SpinLabel{0}), 1u);
  EXPECT_EQ(multiplicity(2, SpinLabel{2}), 1u);
  EXPECT_EQ(multiplicity(4, SpinLabel{2}), 3u);
  EXPECT_EQ(multiplicity(5, SpinLabel{1}), 5u);
  EXPECT_ANY_THROW(multiplicity(4, SpinLabel{1}));
  EXPECT_ANY_THROW(multiplicity(4, SpinLabel{6}));
}

TEST(Multiplicity, OverflowIsReported) {
  EXPECT_THROW(multiplicity(200, SpinLabel{0}), std::overflow_error);
  // the log form stays available
  EXPECT_GT(log_multiplicity(200, SpinLabel{0}).log(), 100.0);
}

TEST(Multiplicity, DimensionCountIsTwoToTheN) {
  for (int n = 1; n <= 20; ++n) {
    mp::cpp_int total = 0;
    for (const SpinLabel s : spin_grid(n)) total += mp::cpp_int(s.dim()) * mp::cpp_int(multiplicity(n, s));
    EXPECT_EQ(total, mp::cpp_int(1) << n) << n;
  }
}

TEST(Multiplicity, LogFormMatchesExact) {
  for (const int n : {7, 20, 41, 60}) {
    for (const SpinLabel s : spin_grid(n)) {
      const double exact = static_cast<double>(multiplicity(n, s));
      EXPECT_NEAR(log_multiplicity(n, s).log(), std::log(exact), 1e-13 * std::max(1.0, std::log(exact)));
    }
  }
}

TEST(SpectralParam, BetaConsistentWithP) {
  for (const double p : {0.5, 0.6, 0.8, 0.99}) {
    const SpectralParam sp(p);
    EXPECT_GE(sp.beta(), 0.0);
    EXPECT_NEAR(std::tanh(sp.beta() / 2.0), 2.0 * p - 1.0, 1e-12);
  }
  EXPECT_TRUE(std::isinf(SpectralParam(1.0).beta()));
  EXPECT_THROW(SpectralParam(0.4), std::domain_error);
  EXPECT_THROW(SpectralParam(1.1), std::domain_error);
}

TEST(SpectralWeight, TwoQubits) {
  EXPECT_NEAR(spectral_weight(2, 0.8, SpinLabel{0}), 0.16, 1e-15);
  EXPECT_NEAR(spectral_weight(2, 0.8, SpinLabel{2}), 0.84, 1e-15);
}

TEST(SpectralWeight, PureStateIsSymmetric) {
  for (const int n : {1, 2, 7, 100}) {
    for (const SpinLabel s : spin_grid(n)) {
      EXPECT_EQ(spectral_weight(n, 1.0, s), s.two_j == n ? 1.0 : 0.0);
    }
  }
}

TEST(SpectralWeight, RejectsBadArguments) {
  EXPECT_THROW(spectral_weight(4, 0.4, SpinLabel{2}), std::domain_error);
  EXPECT_ANY_THROW(spectral_weight(4, 0.8, SpinLabel{3}));
}

TEST(SpectralWeight, ClampedToUnitInterval) {
  for (const double p : {0.5, 0.5000001, 0.7, 0.999999}) {
    for (const SpinLabel s : spin_grid(31)) {
      const double q = spectral_weight(31, p, s);
      EXPECT_GE(q, 0.0);
      EXPECT_LE(q, 1.0);
    }
  }
}

TEST(SpectralWeight, NormalizedOnLargeGrids) {
  for (const int n : {100, 1000, 10000, 100000}) {
    for (const double p : {0.5, 0.8, 0.97}) {
      const BlockDiagState state = block_state_of(n, p, Tolerances{});
      EXPECT_NEAR(state.retained_mass() + state.tail_mass, 1.0, 1e-12) << n << " " << p;
      const auto logq = log_spectral_distribution(n, p);
      EXPECT_NEAR(std::exp(logsumexp(std::span<const double>(logq))), 1.0, 1e-12) << n << " " << p;
    }
  }
}

TEST(GibbsBlock, Examples) {
  const DiagBlock half = gibbs_block(0.8, SpinLabel{1}, 2);
  ASSERT_EQ(half.window(), 2u);
  EXPECT_NEAR(half.weight(0), 0.8, 1e-15);
  EXPECT_NEAR(half.weight(1), 0.2, 1e-15);
  EXPECT_EQ(half.slack, 0.0);

  const DiagBlock one = gibbs_block(0.8, SpinLabel{2}, 3);
  EXPECT_NEAR(one.weight(0), 0.64 / 0.84, 1e-15);
  EXPECT_NEAR(one.weight(1), 0.16 / 0.84, 1e-15);
  EXPECT_NEAR(one.weight(2), 0.04 / 0.84, 1e-15);

  for (const int two_j : {0, 3, 10, 57}) {
    const DiagBlock flat = gibbs_block(0.5, SpinLabel{two_j}, two_j + 1);
    for (std::size_t a = 0; a < flat.window(); ++a) EXPECT_NEAR(flat.weight(a), 1.0 / (two_j + 1), 1e-14);
  }
}

TEST(GibbsBlock, GeometricRatioAndTruncation) {
  const double p = 0.7;
  const DiagBlock b = gibbs_block(p, SpinLabel{40}, 12);
  EXPECT_EQ(b.window(), 12u);
  for (std::size_t a = 1; a < b.window(); ++a) {
    EXPECT_LT(b.logw[a], b.logw[a - 1]);
    EXPECT_NEAR(b.logw[a] - b.logw[a - 1], std::log((1 - p) / p), 1e-13);
  }
  EXPECT_GT(b.slack, 0.0);
  EXPECT_NEAR(b.mass() + b.slack, 1.0, 1e-12);
}

TEST(GibbsBlock, WindowClampAndErrors) {
  EXPECT_EQ(gibbs_block(0.8, SpinLabel{4}, 100).window(), 5u);
  EXPECT_ANY_THROW(gibbs_block(0.8, SpinLabel{4}, 0));
  EXPECT_THROW(gibbs_block(0.3, SpinLabel{4}, 2), std::domain_error);
}

TEST(GibbsBlock, ToleranceWindowIsMinimal) {
  for (const double p : {0.6, 0.8, 0.95}) {
    const DiagBlock b = gibbs_block_tol(p, SpinLabel{3000}, 1e-14);
    EXPECT_LE(b.slack, 1e-14);
    const DiagBlock shorter = gibbs_block(p, SpinLabel{3000}, static_cast<int>(b.window()) - 1);
    EXPECT_GT(shorter.slack, 1e-14);
  }
  const DiagBlock pure = gibbs_block_tol(1.0, SpinLabel{50}, 1e-14);
  EXPECT_EQ(pure.window(), 1u);
  EXPECT_EQ(pure.weight(0), 1.0);
}

TEST(TraceDistance, Examples) {
  const DiagBlock a = gibbs_block(0.8, SpinLabel{2}, 3);
  EXPECT_EQ(trace_distance_diag(a, a).value, 0.0);

  DiagBlock up;
  up.spin = SpinLabel{1};
  up.logw = {0.0, kNegInf};
  DiagBlock down = up;
  down.logw = {kNegInf, 0.0};
  EXPECT_NEAR(trace_distance_diag(up, down).value, 1.0, 1e-15);

  const DiagBlock flat = gibbs_block(0.5, SpinLabel{2}, 3);
  EXPECT_NEAR(trace_distance_diag(a, flat).value, 3.0 / 7.0, 1e-15);
  EXPECT_NEAR(trace_distance_diag(a, flat).value, 0.428571, 1e-6);
}

TEST(TraceDistance, SlackBracketsTruncatedValue) {
  const double p = 0.65;
  const DiagBlock full_a = gibbs_block(p, SpinLabel{30}, 31);
  const DiagBlock full_b = gibbs_block(0.75, SpinLabel{30}, 31);
  const double exact = trace_distance_diag(full_a, full_b).value;
  for (const int wa : {3, 8, 20}) {
    for (const int wb : {2, 9, 31}) {
      const BoundedValue d = trace_distance_diag(gibbs_block(p, SpinLabel{30}, wa), gibbs_block(0.75, SpinLabel{30}, wb));
      EXPECT_LE(exact, d.value + d.slack + 1e-15);
      EXPECT_GE(exact, d.value - d.slack - 1e-15);
    }
  }
  EXPECT_ANY_THROW(trace_distance_diag(full_a, gibbs_block(p, SpinLabel{28}, 3)));
}

TEST(BlockState, PureInput) {
  const BlockDiagState s = block_state_of(50, 1.0, Tolerances{});
  ASSERT_EQ(s.entries.size(), 1u);
  EXPECT_EQ(s.entries[0].spin.two_j, 50);
  EXPECT_EQ(s.entries[0].weight, 1.0);
  EXPECT_EQ(s.tail_mass, 0.0);
}

TEST(BlockState, HundredQubits) {
  const BlockDiagState s = block_state_of(100, 0.8, 1e-12, 1e-14);
  EXPECT_NEAR(s.retained_mass() + s.tail_mass, 1.0, 1e-12);
  EXPECT_LE(s.tail_mass, 1e-12);
  // contiguous and on the grid
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    EXPECT_TRUE(on_grid(100, s.entries[i].spin));
    if (i > 0) {
      EXPECT_EQ(s.entries[i].spin.two_j, s.entries[i - 1].spin.two_j + 2);
    }
    EXPECT_LE(s.entries[i].block.slack, 1e-14);
  }
  // width O(sqrt(n log(1/tol)))
  const double width = 0.5 * (s.entries.back().spin.two_j - s.entries.front().spin.two_j);
  EXPECT_LE(width, 4.0 * std::sqrt(100.0 * std::log(1e12)));
}

TEST(BlockState, WindowAroundJ0) {
  EXPECT_NEAR(j0(1000, 0.8), 300.3, 1e-12);
  const BlockDiagState s = block_state_of(1000, 0.8, Tolerances{});
  EXPECT_NE(s.find(SpinLabel{600}), nullptr);
  EXPECT_EQ(s.find(SpinLabel{601}), nullptr);
  EXPECT_EQ(s.find(SpinLabel{1000}), nullptr);
}

TEST(NearestGridSpin, ParityAndTies) {
  EXPECT_EQ(nearest_grid_spin(1000, 300.3).two_j, 600);
  EXPECT_EQ(nearest_grid_spin(99, 30.0).two_j, 61);  // 29.5 and 30.5 tie, larger wins
  EXPECT_EQ(nearest_grid_spin(999, 300.0).two_j, 601);
  EXPECT_EQ(nearest_grid_spin(10, 0.2).two_j, 0);
  EXPECT_EQ(nearest_grid_spin(10, 99.0).two_j, 10);
  EXPECT_EQ(nearest_grid_spin(10, 2.5).two_j, 6);
}

TEST(ShannonEntropy, Examples) {
  const std::vector<double> coin{0.5, 0.5};
  EXPECT_EQ(shannon_entropy(coin), 1.0);
  const std::vector<double> certain{1.0};
  EXPECT_EQ(shannon_entropy(certain), 0.0);
  const std::vector<double> q{spectral_weight(2, 0.8, SpinLabel{0}), spectral_weight(2, 0.8, SpinLabel{2})};
  EXPECT_NEAR(shannon_entropy(q), 0.6343095546405662, 1e-14);
  const std::vector<double> bad{0.5, -0.1};
  EXPECT_THROW(shannon_entropy(bad), std::domain_error);
  const std::vector<double> with_zero{0.0, 1.0};
  EXPECT_EQ(shannon_entropy(with_zero), 0.0);
}
