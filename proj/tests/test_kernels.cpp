#include <gtest/gtest.h>
#include <omp.h>

#include <cstring>
#include <vector>

#include "schurcomp/cloning.hpp"
#include "schurcomp/infobounds.hpp"
#include "schurcomp/kernels.hpp"
#include "schurcomp/protocols.hpp"

using namespace schurcomp;

namespace {

// Bitwise equality, so -inf == -inf and no tolerance sneaks in.
bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

class KernelPair : public ::testing::Test {
 protected:
  // Force several threads even on a single-core machine.
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

}  // namespace

TEST_F(KernelPair, SpectralWeightsBitwiseEqual) {
  for (const int n : {1, 2, 99, 10000, 20001}) {
    for (const double p : {0.5, 0.63, 0.8, 1.0}) {
      EXPECT_TRUE(same_bits(kernels::log_spectral_weights_serial(n, p), kernels::log_spectral_weights_omp(n, p)))
          << n << " " << p;
    }
  }
}

TEST_F(KernelPair, CloneGatherBitwiseEqual) {
  for (const auto& [two_j, two_k] : std::vector<std::pair<int, int>>{{1, 2}, {8, 3}, {400, 480}, {3000, 2900}, {64, 64}}) {
    const DiagBlock in = gibbs_block(0.7, SpinLabel{two_j}, std::min(two_j + 1, 60));
    const auto stencil = kernels::make_clone_stencil(two_j, two_k, in.window());
    std::vector<double> serial(stencil.out_len);
    std::vector<double> parallel(stencil.out_len);
    kernels::clone_gather_serial(stencil, in.logw, serial);
    kernels::clone_gather_omp(stencil, in.logw, parallel);
    EXPECT_TRUE(same_bits(serial, parallel)) << two_j << " -> " << two_k;
  }
}

TEST_F(KernelPair, PipelinesAgreeAcrossExecutionModes) {
  const int n = 3000;
  const double p = 0.8;
  const BlockDiagState a = block_state_of(n, p, Tolerances{}, Execution::serial);
  const BlockDiagState b = block_state_of(n, p, Tolerances{}, Execution::parallel);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].weight, b.entries[i].weight);
    EXPECT_TRUE(same_bits(a.entries[i].block.logw, b.entries[i].block.logw));
  }

  const ErrorReport ks = known_protocol_error(n, p, {}, Execution::serial);
  const ErrorReport kp = known_protocol_error(n, p, {}, Execution::parallel);
  EXPECT_EQ(ks.epsilon, kp.epsilon);
  EXPECT_EQ(ks.slack, kp.slack);

  const ErrorDecomposition fs = full_error_decomposition(n, p, 0.2, {}, Execution::serial);
  const ErrorDecomposition fp = full_error_decomposition(n, p, 0.2, {}, Execution::parallel);
  EXPECT_EQ(fs.epsilon, fp.epsilon);
  EXPECT_EQ(fs.eps1, fp.eps1);
  EXPECT_EQ(fs.eps2, fp.eps2);
  EXPECT_EQ(fs.eps3, fp.eps3);

  EXPECT_EQ(holevo_fixed_spectrum(n, p, Execution::serial).chi_bits,
            holevo_fixed_spectrum(n, p, Execution::parallel).chi_bits);
}

TEST(Kernels, StencilShapes) {
  const auto up = kernels::make_clone_stencil(4, 10, 5);
  EXPECT_TRUE(up.upward());
  EXPECT_EQ(up.band, 6);
  EXPECT_EQ(up.out_len, 11u);
  const auto down = kernels::make_clone_stencil(10, 4, 3);
  EXPECT_FALSE(down.upward());
  EXPECT_EQ(down.band, 6);
  EXPECT_EQ(down.out_len, 3u);
  EXPECT_GE(kernels::max_threads(), 1);
}
