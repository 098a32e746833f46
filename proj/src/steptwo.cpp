#include "srheat/steptwo.hpp"

#include <cmath>
#include <numbers>

#include "srheat/errors.hpp"

namespace srheat {

GroupPoint group_identity(int n, int p) {
    return GroupPoint{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(p)};
}

GroupPoint group_mul(const GroupPoint& a, const GroupPoint& b, const StructureConstants& c) {
    if (a.x.size() != c.n() || b.x.size() != c.n() || a.z.size() != c.p() ||
        b.z.size() != c.p()) {
        throw std::invalid_argument("group point does not match the structure constants");
    }
    GroupPoint out;
    out.x = a.x + b.x;
    out.z = a.z + b.z;
    for (int k = 0; k < c.p(); ++k) {
        out.z[k] += 0.5 * a.x.dot(c.matrix(k) * b.x);
    }
    return out;
}

GroupPoint group_inv(const GroupPoint& a) { return GroupPoint{-a.x, -a.z}; }

Frame left_invariant_frame(const StructureConstants& c) {
    const int n = c.n();
    const int p = c.p();
    const int d = n + p;
    std::vector<PolyVectorField> fields;
    fields.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        PolyVectorField f;
        for (int comp = 0; comp < d; ++comp) f.comp.emplace_back(d);
        f.comp[static_cast<std::size_t>(i)] = Polynomial::constant(d, 1.0);
        for (int k = 0; k < p; ++k) {
            Polynomial& zk = f.comp[static_cast<std::size_t>(n + k)];
            for (int j = 0; j < n; ++j) {
                double coeff = 0.5 * c.matrix(k)(j, i);
                if (coeff == 0.0) continue;
                std::vector<int> exps(static_cast<std::size_t>(d), 0);
                exps[static_cast<std::size_t>(j)] = 1;
                zk.add_coeff(exps, coeff);
            }
        }
        fields.push_back(std::move(f));
    }
    return Frame(d, std::move(fields));
}

SkewSpectral::SkewSpectral(const Eigen::MatrixXd& xi) {
    if (xi.rows() != xi.cols() || xi.rows() < 1) {
        throw std::invalid_argument("skew matrix must be square");
    }
    double scale = std::max(1.0, xi.cwiseAbs().maxCoeff());
    if ((xi + xi.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("matrix is not skew-symmetric");
    }
    Eigen::MatrixXd sym = -(xi * xi);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    if (sym.rows() <= 3) {
        eig.computeDirect(sym);  // closed-form path; this sits inside quadrature loops
    } else {
        eig.compute(sym);
    }
    if (eig.info() != Eigen::Success) throw consistency_error("eigendecomposition failed");
    q_ = eig.eigenvectors();
    s_ = eig.eigenvalues();

    double sym_scale = std::max(sym.cwiseAbs().maxCoeff(), 1e-30);
    Eigen::MatrixXd rebuilt = q_ * s_.asDiagonal() * q_.transpose();
    if ((rebuilt - sym).cwiseAbs().maxCoeff() > 1e-10 * sym_scale) {
        throw consistency_error("spectral reconstruction drifted beyond tolerance");
    }
    for (int i = 0; i < s_.size(); ++i) {
        if (s_[i] < -1e-12 * std::max(1.0, sym_scale)) {
            throw consistency_error("squared skew matrix has a genuinely negative eigenvalue");
        }
        s_[i] = std::max(s_[i], 0.0);
    }
}

Eigen::MatrixXd SkewSpectral::apply(const std::function<double(double)>& fn) const {
    Eigen::VectorXd fs(s_.size());
    for (int i = 0; i < s_.size(); ++i) fs[i] = fn(s_[i]);
    return q_ * fs.asDiagonal() * q_.transpose();
}

double sinhc_sqrt(double s) {
    if (s < 1e-8) return 1.0 + s / 6.0 + s * s / 120.0;
    double r = std::sqrt(s);
    return std::sinh(r) / r;
}

double sqrt_coth_sqrt(double s) {
    if (s < 1e-8) return 1.0 + s / 3.0 - s * s / 45.0;
    double r = std::sqrt(s);
    return r * std::cosh(r) / std::sinh(r);
}

KernelFactor kernel_factor(double t, const Eigen::MatrixXd& xi) {
    if (!(t > 0.0)) throw std::invalid_argument("time must be positive");
    SkewSpectral spec(xi);
    const double half_t_sq = (t / 2.0) * (t / 2.0);
    KernelFactor out;
    out.det_factor = 1.0;
    for (int i = 0; i < spec.s().size(); ++i) {
        out.det_factor /= std::sqrt(sinhc_sqrt(half_t_sq * spec.s()[i]));
    }
    out.t_inv = spec.apply([half_t_sq](double s) { return sqrt_coth_sqrt(half_t_sq * s); });
    return out;
}

std::complex<double> oscillatory_kernel(double t, const Eigen::MatrixXd& xi,
                                        const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const int n = static_cast<int>(xi.rows());
    if (x.size() != n || y.size() != n) {
        throw std::invalid_argument("points do not match the matrix dimension");
    }
    KernelFactor kf = kernel_factor(t, xi);
    Eigen::VectorXd diff = y - x;
    double quad_form = diff.dot(kf.t_inv * diff);
    double phase = -0.5 * (xi * x).dot(y);
    double amp = std::pow(2.0 * std::numbers::pi * t, -0.5 * n) * kf.det_factor *
                 std::exp(-quad_form / (2.0 * t));
    return std::polar(amp, phase);
}

double nilpotent_kernel(double t, const StructureConstants& c, const GroupPoint& g0,
                        const GroupPoint& g1, const QuadOptions& opts) {
    if (!(t > 0.0)) throw std::invalid_argument("time must be positive");
    const int n = c.n();
    const int p = c.p();
    GroupPoint g = group_mul(group_inv(g0), g1, c);

    if (p == 0) {
        return std::pow(2.0 * std::numbers::pi * t, -0.5 * n) *
               std::exp(-g.x.squaredNorm() / (2.0 * t));
    }
    if (!c.full_rank()) {
        throw std::invalid_argument(
            "structure constants are rank-deficient; the kernel integral diverges");
    }

    auto integrand = [&](const Eigen::VectorXd& eta) -> std::complex<double> {
        KernelFactor kf = kernel_factor(1.0, c.contract(eta));
        double re = -0.5 * g.x.dot(kf.t_inv * g.x) / t;
        double im = -eta.dot(g.z) / t;
        return kf.det_factor * std::exp(std::complex<double>(re, im));
    };
    ComplexQuadResult res = quad_decay_complex(integrand, p, opts);

    double imag_tol = std::max({opts.abs_tol, 4.0 * res.error, opts.rel_tol * std::abs(res.value)});
    if (std::abs(res.value.imag()) > imag_tol) {
        throw consistency_error("kernel integral has a non-vanishing imaginary part");
    }
    return std::pow(2.0 * std::numbers::pi * t, -0.5 * n - p) * res.value.real();
}

}  // namespace srheat
