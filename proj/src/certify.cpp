#include <cmath>
#include <string>

#include "schurcomp/cloning.hpp"
#include "schurcomp/oracle.hpp"

namespace schurcomp::oracle {

namespace {

std::string pair_label(int two_j, int two_k) {
  return "twoJ=" + std::to_string(two_j) + " twoK=" + std::to_string(two_k);
}

}  // namespace

std::vector<Certification> certify_cloning(int max_two, double tolerance) {
  std::vector<Certification> rows;
  for (int two_j = 0; two_j <= max_two; ++two_j) {
    const SpinLabel from{two_j};
    for (int two_k = 0; two_k <= max_two; ++two_k) {
      const SpinLabel to{two_k};
      double worst = 0.0;
      for (int a = 0; a < from.dim(); ++a) {
        DiagBlock input;
        input.spin = from;
        input.logw.assign(static_cast<std::size_t>(from.dim()), kNegInf);
        input.logw[static_cast<std::size_t>(a)] = 0.0;
        const DiagBlock closed = clone_diag(input, to, 0.0, Execution::serial);

        ComplexMatrix unit = ComplexMatrix::Zero(from.dim(), from.dim());
        unit(a, a) = 1.0;
        const ComplexMatrix ref = restrict_symmetric(clone_channel_oracle(from, to, embed_symmetric(two_j, unit)));
        for (int b = 0; b < to.dim(); ++b) {
          for (int c = 0; c < to.dim(); ++c) {
            const double expected = b == c ? closed.weight(static_cast<std::size_t>(b)) : 0.0;
            worst = std::max(worst, std::abs(ref(b, c) - expected));
          }
        }
        worst = std::max(worst, closed.slack);
      }
      rows.push_back({"clone_diag", pair_label(two_j, two_k), worst, tolerance});
    }
  }
  return rows;
}

std::vector<Certification> certify_spectral_weights(int max_n, std::span<const double> ps, double tolerance) {
  std::vector<Certification> rows;
  for (int n = 1; n <= max_n; ++n) {
    const TotalSpinOracle dense(n);
    double worst = 0.0;
    for (const double p : ps) {
      const auto ref = dense.weights(p);
      for (std::size_t g = 0; g < ref.size(); ++g) {
        worst = std::max(worst, std::abs(ref[g] - spectral_weight(n, p, dense.spins()[g])));
      }
    }
    rows.push_back({"spectral_weight", "n=" + std::to_string(n), worst, tolerance});
  }
  return rows;
}

std::vector<Certification> certify_eigenspace_dims(int max_n) {
  std::vector<Certification> rows;
  for (int n = 1; n <= max_n; ++n) {
    const TotalSpinOracle dense(n);
    double worst = 0.0;
    for (std::size_t g = 0; g < dense.spins().size(); ++g) {
      const SpinLabel spin = dense.spins()[g];
      const auto expected = static_cast<double>(spin.dim()) * static_cast<double>(multiplicity(n, spin));
      worst = std::max(worst, std::abs(static_cast<double>(dense.eigenspace_dims()[g]) - expected));
    }
    rows.push_back({"eigenspace_dim", "n=" + std::to_string(n), worst, 0.0});
  }
  return rows;
}

std::vector<Certification> certify_symmetric_block(int max_n, double p, double tolerance) {
  std::vector<Certification> rows;
  for (int n = 1; n <= max_n; ++n) {
    const DiagBlock ref = symmetric_block_oracle(n, p);
    const DiagBlock closed = gibbs_block(p, SpinLabel{n}, n + 1);
    double worst = closed.slack;
    for (std::size_t a = 0; a < ref.window(); ++a) worst = std::max(worst, std::abs(ref.weight(a) - closed.weight(a)));
    rows.push_back({"gibbs_block", "n=" + std::to_string(n), worst, tolerance});
  }
  return rows;
}

}  // namespace schurcomp::oracle
