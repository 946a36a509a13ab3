#include "schurcomp/oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "schurcomp/numerics.hpp"

namespace schurcomp::oracle {

namespace {

void require_budget(int num_qubits, int cap, const char* what) {
  if (num_qubits < 0 || num_qubits > cap) {
    throw std::invalid_argument(std::string(what) + ": " + std::to_string(num_qubits) +
                                " qubits exceeds the dense budget of " + std::to_string(cap));
  }
}

}  // namespace

RealMatrix dicke_basis(int num_qubits) {
  require_budget(num_qubits, kMaxQubits, "dicke_basis");
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  RealMatrix v = RealMatrix::Zero(dim, num_qubits + 1);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const int k = std::popcount(static_cast<unsigned>(i));
    v(i, k) = 1.0;
  }
  for (int k = 0; k <= num_qubits; ++k) v.col(k) /= v.col(k).norm();
  return v;
}

ComplexMatrix symmetric_projector(int num_qubits) {
  const RealMatrix v = dicke_basis(num_qubits);
  return (v * v.transpose()).cast<std::complex<double>>();
}

DenseOperator embed_symmetric(int num_qubits, const ComplexMatrix& dicke_coeffs) {
  const ComplexMatrix v = dicke_basis(num_qubits).cast<std::complex<double>>();
  if (dicke_coeffs.rows() != v.cols() || dicke_coeffs.cols() != v.cols()) {
    throw std::invalid_argument("embed_symmetric: coefficient matrix must be (N+1) x (N+1)");
  }
  return {num_qubits, v * dicke_coeffs * v.adjoint()};
}

ComplexMatrix restrict_symmetric(const DenseOperator& rho) {
  const ComplexMatrix v = dicke_basis(rho.num_qubits).cast<std::complex<double>>();
  return v.adjoint() * rho.entries * v;
}

DiagBlock diag_block_of(SpinLabel spin, const ComplexMatrix& dicke_coeffs) {
  DiagBlock block;
  block.spin = spin;
  block.logw.resize(static_cast<std::size_t>(spin.dim()));
  for (int a = 0; a < spin.dim(); ++a) {
    const double w = std::max(0.0, dicke_coeffs(a, a).real());
    block.logw[static_cast<std::size_t>(a)] = std::log(w);
  }
  return block;
}

DenseOperator clone_channel_oracle(SpinLabel from, SpinLabel to, const DenseOperator& rho) {
  const int in_q = from.two_j;
  const int out_q = to.two_j;
  require_budget(std::max(in_q, out_q), 12, "clone_channel_oracle");
  if (rho.num_qubits != in_q || rho.dim() != (Eigen::Index{1} << in_q)) {
    throw std::invalid_argument("clone_channel_oracle: operator size does not match 2J qubits");
  }
  const ComplexMatrix proj_in = symmetric_projector(in_q);
  const double leak = (rho.entries - proj_in * rho.entries * proj_in).cwiseAbs().maxCoeff();
  if (leak > 1e-10) throw std::invalid_argument("clone_channel_oracle: input leaves the symmetric subspace");

  if (in_q > out_q) {
    const Eigen::Index keep = Eigen::Index{1} << out_q;
    const Eigen::Index drop = Eigen::Index{1} << (in_q - out_q);
    ComplexMatrix out = ComplexMatrix::Zero(keep, keep);
    for (Eigen::Index h = 0; h < drop; ++h) out += rho.entries.block(h * keep, h * keep, keep, keep);
    return {out_q, out};
  }

  // P_K (rho (x) P_D) P_K = V A V^dagger with A = V^dagger (rho (x) P_D) V.
  const int added = out_q - in_q;
  const Eigen::Index lo_dim = Eigen::Index{1} << added;
  const Eigen::Index hi_dim = Eigen::Index{1} << in_q;
  const ComplexMatrix v = dicke_basis(out_q).cast<std::complex<double>>();
  const ComplexMatrix proj_add = symmetric_projector(added);
  ComplexMatrix xv(v.rows(), v.cols());
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    // column reshaped with the leading qubits as the row index
    ComplexMatrix shaped(hi_dim, lo_dim);
    for (Eigen::Index h = 0; h < hi_dim; ++h) {
      for (Eigen::Index l = 0; l < lo_dim; ++l) shaped(h, l) = v(h * lo_dim + l, c);
    }
    const ComplexMatrix applied = rho.entries * shaped * proj_add.transpose();
    for (Eigen::Index h = 0; h < hi_dim; ++h) {
      for (Eigen::Index l = 0; l < lo_dim; ++l) xv(h * lo_dim + l, c) = applied(h, l);
    }
  }
  const ComplexMatrix a = v.adjoint() * xv;
  const double scale = static_cast<double>(in_q + 1) / static_cast<double>(out_q + 1);
  return {out_q, scale * (v * a * v.adjoint())};
}

ComplexMatrix choi_symmetric(SpinLabel from, SpinLabel to) {
  const int din = from.dim();
  const int dout = to.dim();
  ComplexMatrix choi = ComplexMatrix::Zero(din * dout, din * dout);
  for (int a = 0; a < din; ++a) {
    for (int b = 0; b < din; ++b) {
      ComplexMatrix unit = ComplexMatrix::Zero(din, din);
      unit(a, b) = 1.0;
      const DenseOperator image = clone_channel_oracle(from, to, embed_symmetric(from.two_j, unit));
      choi.block(a * dout, b * dout, dout, dout) = restrict_symmetric(image);
    }
  }
  return choi;
}

TotalSpinOracle::TotalSpinOracle(int n) : n_(n) {
  require_budget(n, 10, "TotalSpinOracle");
  if (n < 1) throw std::invalid_argument("TotalSpinOracle: n must be positive");
  spins_ = spin_grid(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  // J^2 = n(4-n)/4 + sum_{i<j} SWAP_ij
  RealMatrix j2 = RealMatrix::Identity(dim, dim) * (n * (4.0 - n) / 4.0);
  for (int qa = 0; qa < n; ++qa) {
    for (int qb = qa + 1; qb < n; ++qb) {
      const Eigen::Index ma = Eigen::Index{1} << (n - 1 - qa);
      const Eigen::Index mb = Eigen::Index{1} << (n - 1 - qb);
      for (Eigen::Index i = 0; i < dim; ++i) {
        const bool ba = (i & ma) != 0;
        const bool bb = (i & mb) != 0;
        Eigen::Index j = i;
        if (ba != bb) j = i ^ ma ^ mb;
        j2(j, i) += 1.0;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(j2);
  if (solver.info() != Eigen::Success) throw std::runtime_error("TotalSpinOracle: eigensolver failed");
  vectors_ = solver.eigenvectors();
  dims_.assign(spins_.size(), 0);
  label_index_.resize(static_cast<std::size_t>(dim));
  for (Eigen::Index c = 0; c < dim; ++c) {
    const double lambda = solver.eigenvalues()(c);
    const int two_j = static_cast<int>(std::lround(std::sqrt(1.0 + 4.0 * lambda) - 1.0));
    const SpinLabel spin{two_j};
    if (!on_grid(n, spin) || std::abs(spin.j() * (spin.j() + 1.0) - lambda) > 1e-8) {
      throw std::runtime_error("TotalSpinOracle: eigenvalue is not of the form J(J+1)");
    }
    const auto idx = static_cast<std::size_t>((two_j - n % 2) / 2);
    label_index_[static_cast<std::size_t>(c)] = static_cast<int>(idx);
    ++dims_[idx];
  }
}

std::vector<double> TotalSpinOracle::weights(double p) const {
  const Eigen::Index dim = vectors_.rows();
  Eigen::VectorXd diag(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const int ones = std::popcount(static_cast<unsigned>(i));
    diag(i) = std::pow(p, n_ - ones) * std::pow(1.0 - p, ones);
  }
  std::vector<double> q(spins_.size(), 0.0);
  for (Eigen::Index c = 0; c < dim; ++c) {
    q[static_cast<std::size_t>(label_index_[static_cast<std::size_t>(c)])] +=
        vectors_.col(c).cwiseAbs2().dot(diag);
  }
  return q;
}

std::vector<double> spectral_weights_oracle(int n, double p) { return TotalSpinOracle(n).weights(p); }

DiagBlock symmetric_block_oracle(int n, double p) {
  require_budget(n, kMaxQubits, "symmetric_block_oracle");
  const RealMatrix v = dicke_basis(n);
  Eigen::VectorXd diag(v.rows());
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const int ones = std::popcount(static_cast<unsigned>(i));
    diag(i) = std::pow(p, n - ones) * std::pow(1.0 - p, ones);
  }
  Eigen::VectorXd w(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) w(k) = v.col(k).cwiseAbs2().dot(diag);
  w /= w.sum();
  DiagBlock block;
  block.spin = SpinLabel{n};
  for (Eigen::Index k = 0; k < w.size(); ++k) block.logw.push_back(std::log(w(k)));
  return block;
}

std::array<ComplexMatrix, 3> spin_matrices(SpinLabel spin) {
  const int dim = spin.dim();
  const double j = spin.j();
  ComplexMatrix jz = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix jp = ComplexMatrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    const double m = j - a;
    jz(a, a) = m;
    if (a > 0) jp(a - 1, a) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));  // |m> -> |m+1>
  }
  const ComplexMatrix jm = jp.adjoint();
  const std::complex<double> i_unit(0.0, 1.0);
  return {0.5 * (jp + jm), (jp - jm) / (2.0 * i_unit), jz};
}

ComplexMatrix spin_rotation(SpinLabel spin, const Eigen::Vector3d& axis, double angle) {
  const auto s = spin_matrices(spin);
  const Eigen::Vector3d u = axis.normalized();
  const ComplexMatrix gen = u.x() * s[0] + u.y() * s[1] + u.z() * s[2];
  const ComplexMatrix arg = std::complex<double>(0.0, -angle) * gen;
  return arg.exp();
}

}  // namespace schurcomp::oracle
