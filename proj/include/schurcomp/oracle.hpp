#pragma once

// Brute-force dense-matrix references for the closed forms. Everything here
// works on the full 2^N-dimensional qubit space and is meant for N <= 14.

#include <Eigen/Dense>
#include <array>
#include <span>
#include <string>
#include <vector>

#include "schurcomp/blocks.hpp"

namespace schurcomp::oracle {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr int kMaxQubits = 14;

/// Operator on num_qubits qubits; qubit 0 is the most significant tensor factor.
struct DenseOperator {
  int num_qubits = 0;
  ComplexMatrix entries;

  Eigen::Index dim() const { return entries.rows(); }
};

/// Orthonormal Dicke vectors as columns; column k has k excitations (|1>),
/// i.e. spin projection m = N/2 - k.
RealMatrix dicke_basis(int num_qubits);

/// Projector onto the symmetric subspace, sum_k |D_k><D_k|.
ComplexMatrix symmetric_projector(int num_qubits);

/// V X V^dagger for an operator X written in the Dicke basis.
DenseOperator embed_symmetric(int num_qubits, const ComplexMatrix& dicke_coeffs);

/// V^dagger rho V: the Dicke-basis matrix of an operator on the symmetric subspace.
ComplexMatrix restrict_symmetric(const DenseOperator& rho);

/// Diagonal of a Dicke-basis matrix as a DiagBlock at J = N/2 (full window).
DiagBlock diag_block_of(SpinLabel spin, const ComplexMatrix& dicke_coeffs);

/// C_{J->K} straight from its definition: (2J+1)/(2K+1) P_K (rho (x) P_{K-J}) P_K
/// for J <= K, partial trace over the first 2(J-K) qubits otherwise.
/// Rejects inputs with a component outside the symmetric subspace above 1e-10.
DenseOperator clone_channel_oracle(SpinLabel from, SpinLabel to, const DenseOperator& rho);

/// Choi matrix of C_{J->K} restricted to symmetric input and output spaces,
/// in the Dicke bases: sum_{ab} |a><b| (x) V_K^dagger C(V_J|a><b|V_J^dagger) V_K.
ComplexMatrix choi_symmetric(SpinLabel from, SpinLabel to);

/// Eigendecomposition of the total spin operator J^2 on n qubits.
class TotalSpinOracle {
 public:
  /// n <= 10.
  explicit TotalSpinOracle(int n);

  int n() const { return n_; }
  /// Grid spins in ascending order.
  const std::vector<SpinLabel>& spins() const { return spins_; }
  /// Dimension of each J^2 eigenspace, aligned with spins().
  const std::vector<std::size_t>& eigenspace_dims() const { return dims_; }
  /// q_J = Tr[Pi_J rho^(x)n] for rho = diag(p, 1-p).
  std::vector<double> weights(double p) const;

 private:
  int n_;
  std::vector<SpinLabel> spins_;
  std::vector<std::size_t> dims_;
  std::vector<int> label_index_;  // eigenvector column -> index into spins_
  RealMatrix vectors_;
};

std::vector<double> spectral_weights_oracle(int n, double p);

/// Normalized Dicke diagonal of rho^(x)n, <D_k| rho^(x)n |D_k> / sum.
DiagBlock symmetric_block_oracle(int n, double p);

/// (J_x, J_y, J_z) for spin J in the |J, J - a> basis.
std::array<ComplexMatrix, 3> spin_matrices(SpinLabel spin);

/// exp(-i angle axis . J) for a unit axis.
ComplexMatrix spin_rotation(SpinLabel spin, const Eigen::Vector3d& axis, double angle);

/// One row of a closed-form certification: the largest elementwise deviation
/// between a closed form and its dense reference over one case.
struct Certification {
  std::string check;
  std::string label;
  double max_abs_err = 0.0;
  double tolerance = 0.0;

  bool pass() const { return max_abs_err <= tolerance; }
};

/// clone_diag against clone_channel_oracle for every basis input, one row per
/// (twoJ, twoK) with 0 <= twoJ, twoK <= max_two. Off-diagonal output is
/// counted in the error.
std::vector<Certification> certify_cloning(int max_two, double tolerance = 1e-10);

/// spectral_weight against TotalSpinOracle, one row per n in 1..max_n.
std::vector<Certification> certify_spectral_weights(int max_n, std::span<const double> ps,
                                                    double tolerance = 1e-10);

/// J^2 eigenspace dimensions against (2J+1) m_J, one row per n in 1..max_n.
std::vector<Certification> certify_eigenspace_dims(int max_n);

/// gibbs_block(p, n/2) against symmetric_block_oracle, one row per n in 1..max_n.
std::vector<Certification> certify_symmetric_block(int max_n, double p, double tolerance = 1e-12);

}  // namespace schurcomp::oracle
