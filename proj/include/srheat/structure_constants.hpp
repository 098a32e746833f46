#pragma once

#include <Eigen/Dense>
#include <vector>

namespace srheat {

// Structure constants of a step-two nilpotent group on R^{n+p}: p real
// skew-symmetric n x n matrices C^k giving [X_i, X_j] = sum_k C^k_ij Z_k.
// Antisymmetry is validated at construction (and then relied on); the rank
// condition that makes the group step-two/bracket-generating is checked by
// the operations whose integrals diverge without it.
class StructureConstants {
  public:
    StructureConstants(int n, std::vector<Eigen::MatrixXd> c);

    static StructureConstants heisenberg();  // n=2, p=1, C^1_{12} = 1

    int n() const { return n_; }
    int p() const { return static_cast<int>(c_.size()); }
    const Eigen::MatrixXd& matrix(int k) const { return c_.at(static_cast<std::size_t>(k)); }
    const std::vector<Eigen::MatrixXd>& matrices() const { return c_; }

    // sum_k zeta_k C^k
    Eigen::MatrixXd contract(const Eigen::VectorXd& zeta) const;

    // Rank of the p x n(n-1)/2 matrix of stacked upper-triangular entries;
    // full rank p is the step-two requirement.
    int pairing_rank(double tol = 1e-9) const;
    bool full_rank(double tol = 1e-9) const { return pairing_rank(tol) == p(); }

    // Hilbert-Schmidt Gram matrix G_kl = sum_ij C^k_ij C^l_ij.
    Eigen::MatrixXd gram() const;

  private:
    int n_;
    std::vector<Eigen::MatrixXd> c_;
};

}  // namespace srheat
