#include "srheat/structure_constants.hpp"

#include <stdexcept>

namespace srheat {

StructureConstants::StructureConstants(int n, std::vector<Eigen::MatrixXd> c)
    : n_(n), c_(std::move(c)) {
    if (n_ < 1) throw std::invalid_argument("need at least one horizontal direction");
    for (const auto& m : c_) {
        if (m.rows() != n_ || m.cols() != n_) {
            throw std::invalid_argument("structure matrix has the wrong shape");
        }
        double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
            throw std::invalid_argument("structure matrix is not antisymmetric");
        }
    }
}

StructureConstants StructureConstants::heisenberg() {
    Eigen::MatrixXd c(2, 2);
    c << 0.0, 1.0, -1.0, 0.0;
    return StructureConstants(2, {c});
}

Eigen::MatrixXd StructureConstants::contract(const Eigen::VectorXd& zeta) const {
    if (zeta.size() != p()) throw std::invalid_argument("contraction vector has wrong length");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_, n_);
    for (int k = 0; k < p(); ++k) out += zeta[k] * c_[static_cast<std::size_t>(k)];
    return out;
}

int StructureConstants::pairing_rank(double tol) const {
    if (p() == 0) return 0;
    const int pairs = n_ * (n_ - 1) / 2;
    Eigen::MatrixXd stacked(p(), std::max(pairs, 1));
    stacked.setZero();
    for (int k = 0; k < p(); ++k) {
        int col = 0;
        for (int i = 0; i < n_; ++i) {
            for (int j = i + 1; j < n_; ++j) {
                stacked(k, col++) = c_[static_cast<std::size_t>(k)](i, j);
            }
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv[i] > tol * sv[0]) ++rank;
    }
    return rank;
}

Eigen::MatrixXd StructureConstants::gram() const {
    Eigen::MatrixXd g(p(), p());
    for (int k = 0; k < p(); ++k) {
        for (int l = k; l < p(); ++l) {
            double dot = c_[static_cast<std::size_t>(k)]
                             .cwiseProduct(c_[static_cast<std::size_t>(l)])
                             .sum();
            g(k, l) = dot;
            g(l, k) = dot;
        }
    }
    return g;
}

}  // namespace srheat
