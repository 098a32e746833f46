#include "srheat/leading.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "srheat/steptwo.hpp"

namespace srheat {

namespace {

double sinh_ratio(double lambda) {
    // (lambda/2)/sinh(lambda/2), even, exponentially decaying
    double h = 0.5 * lambda;
    if (std::abs(h) < 1e-8) return 1.0 - h * h / 6.0;
    return h / std::sinh(h);
}

}  // namespace

C0Result c0_riemannian(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    C0Result out;
    out.value = std::pow(2.0 * std::numbers::pi, -0.5 * d);
    out.error = 0.0;
    out.nu = d;
    out.method = "closed-form";
    return out;
}

C0Result c0_contact3d(const QuadOptions& opts) {
    QuadResult q = quad_decay([](const Eigen::VectorXd& lam) { return sinh_ratio(lam[0]); }, 1,
                              opts);
    C0Result out;
    double pref = std::pow(2.0 * std::numbers::pi, -2.0);
    out.value = pref * q.value;
    out.error = pref * q.error;
    out.nu = 4;
    out.method = "quadrature-1d";
    return out;
}

C0Result c0_cr(int k, const QuadOptions& opts) {
    if (k < 1) throw std::invalid_argument("need k >= 1 contact pairs");
    const double inv_2pi = 1.0 / (2.0 * std::numbers::pi);
    QuadResult q = quad_decay(
        [k, inv_2pi](const Eigen::VectorXd& lam) {
            return std::pow(inv_2pi * sinh_ratio(lam[0]), k);
        },
        1, opts);
    C0Result out;
    out.value = 0.5 * inv_2pi * q.value;
    out.error = 0.5 * inv_2pi * q.error;
    out.nu = 2 * k + 2;
    out.method = "quadrature-1d";
    return out;
}

double popp_factor(const StructureConstants& c) {
    if (c.p() == 0) return 1.0;
    Eigen::MatrixXd gram = c.gram();
    double det = gram.determinant();
    if (!(det > 1e-12 * std::pow(std::max(1.0, gram.cwiseAbs().maxCoeff()), c.p()))) {
        throw std::invalid_argument("structure-constant Gram matrix is singular");
    }
    return std::sqrt(det);
}

C0Result c0_steptwo(const StructureConstants& c, Measure measure, const QuadOptions& opts) {
    const int n = c.n();
    const int p = c.p();
    C0Result out;
    out.nu = n + 2 * p;

    if (p == 0) {
        out = c0_riemannian(n);
        return out;
    }
    if (!c.full_rank()) {
        throw std::invalid_argument(
            "structure constants are rank-deficient; the constant's integral diverges");
    }

    QuadResult q = quad_decay(
        [&c](const Eigen::VectorXd& zeta) {
            return kernel_factor(1.0, c.contract(zeta)).det_factor;
        },
        p, opts);
    double pref = std::pow(2.0 * std::numbers::pi, -0.5 * n - p);
    out.value = pref * q.value;
    out.error = pref * q.error;
    out.method = p == 1 ? "quadrature-1d" : (q.method == "halton" ? "mc" : "quadrature-pd");

    if (measure == Measure::popp) {
        double factor = popp_factor(c);
        out.value *= factor;
        out.error *= factor;
    }
    return out;
}

}  // namespace srheat
