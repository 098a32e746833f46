#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "srheat/errors.hpp"

namespace srheat {

// Policy knobs for the decaying-integrand quadrature. The defaults suit
// analytic integrands with exponential tails, which is everything the
// kernel and constant evaluations produce.
struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    // The truncation radius grows until the sup of |f| on the box shell
    // drops below tail_factor * |f(0)|.
    double tail_factor = 1e-12;
    double max_radius = 4096.0;
    int start_nodes = 33;                  // per axis, kept odd while doubling
    std::size_t max_evals = 20'000'000;    // tensor-rule budget
    std::size_t qmc_samples = 1u << 20;    // low-discrepancy fallback, dim > 3
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // last refinement delta (tensor) or half-sample delta (qmc)
    std::size_t evals = 0;
    std::string method;  // "gauss-tensor" or "halton"
    double radius = 0.0;
};

struct ComplexQuadResult {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    std::size_t evals = 0;
    std::string method;
    double radius = 0.0;
};

using RealIntegrand = std::function<double(const Eigen::VectorXd&)>;
using ComplexIntegrand = std::function<std::complex<double>(const Eigen::VectorXd&)>;

// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

// Integral of f over R^p for integrands decaying to (essentially) zero
// outside a box found by radius doubling. Tensor Gauss-Legendre with
// per-axis node doubling for p <= 3, a fixed Halton rule beyond that.
// Throws convergence_error when no decay is detected within max_radius or
// the refinement budget runs out before two passes agree.
ComplexQuadResult quad_decay_complex(const ComplexIntegrand& f, int p,
                                     const QuadOptions& opts = {});
QuadResult quad_decay(const RealIntegrand& f, int p, const QuadOptions& opts = {});

// Single tensor Gauss-Legendre pass over a fixed box, no adaptivity. For
// checks that know their domain (e.g. mass over a 6-sigma box).
double quad_box(const RealIntegrand& f, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                int nodes_per_axis);

}  // namespace srheat
