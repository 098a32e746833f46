#include "srheat/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace srheat {

namespace {

// Compensated accumulation; the tensor rules sum millions of terms and the
// acceptance tolerances sit near 1e-10, too close to plain-double drift.
struct Kahan {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

struct KahanC {
    Kahan re, im;
    void add(std::complex<double> x) {
        re.add(x.real());
        im.add(x.imag());
    }
    std::complex<double> value() const { return {re.sum, im.sum}; }
};

double legendre_newton(int m, int root_index) {
    double x = std::cos(std::numbers::pi * (root_index + 0.75) / (m + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = 0.0;
        for (int k = 1; k <= m; ++k) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
        }
        // p0 = P_m(x), p1 = P_{m-1}(x)
        double deriv = m * (x * p0 - p1) / (x * x - 1.0);
        double dx = p0 / deriv;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
    }
    return x;
}

// Sup of |f| sampled on the faces of the cube [-R, R]^p. A lattice sample,
// not a certified bound, but the integrands here are smooth products of
// radially decaying factors.
double shell_sup(const ComplexIntegrand& f, int p, double radius, std::size_t& evals) {
    if (p == 1) {
        Eigen::VectorXd pt(1);
        pt[0] = radius;
        double a = std::abs(f(pt));
        pt[0] = -radius;
        evals += 2;
        return std::max(a, std::abs(f(pt)));
    }
    const int per_axis = p <= 3 ? 5 : 3;
    double sup = 0.0;
    Eigen::VectorXd pt(p);
    std::vector<int> idx(static_cast<std::size_t>(p - 1), 0);
    for (int face_axis = 0; face_axis < p; ++face_axis) {
        for (double sign : {-1.0, 1.0}) {
            idx.assign(idx.size(), 0);
            while (true) {
                pt[face_axis] = sign * radius;
                int free_axis = 0;
                for (int a = 0; a < p; ++a) {
                    if (a == face_axis) continue;
                    double frac = per_axis == 1
                                      ? 0.5
                                      : static_cast<double>(idx[static_cast<std::size_t>(free_axis)]) /
                                            (per_axis - 1);
                    pt[a] = (2.0 * frac - 1.0) * radius;
                    ++free_axis;
                }
                sup = std::max(sup, std::abs(f(pt)));
                ++evals;
                int carry = 0;
                while (carry < p - 1) {
                    if (++idx[static_cast<std::size_t>(carry)] < per_axis) break;
                    idx[static_cast<std::size_t>(carry)] = 0;
                    ++carry;
                }
                if (carry == p - 1) break;
            }
        }
    }
    return sup;
}

std::complex<double> tensor_pass(const ComplexIntegrand& f, int p, double radius, int m,
                                 std::size_t& evals) {
    std::vector<double> nodes, weights;
    gauss_legendre(m, nodes, weights);
    KahanC acc;
    Eigen::VectorXd pt(p);
    std::vector<int> idx(static_cast<std::size_t>(p), 0);
    while (true) {
        double w = 1.0;
        for (int a = 0; a < p; ++a) {
            pt[a] = radius * nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
            w *= radius * weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
        }
        acc.add(w * f(pt));
        ++evals;
        int carry = 0;
        while (carry < p) {
            if (++idx[static_cast<std::size_t>(carry)] < m) break;
            idx[static_cast<std::size_t>(carry)] = 0;
            ++carry;
        }
        if (carry == p) break;
    }
    return acc.value();
}

double halton(std::size_t index, int base) {
    double result = 0.0;
    double f = 1.0 / base;
    std::size_t i = index;
    while (i > 0) {
        result += f * static_cast<double>(i % static_cast<std::size_t>(base));
        i /= static_cast<std::size_t>(base);
        f /= base;
    }
    return result;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double find_radius(const ComplexIntegrand& f, int p, const QuadOptions& opts,
                   std::size_t& evals) {
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(p);
    double f0 = std::abs(f(zero));
    ++evals;
    double tail = opts.tail_factor * std::max(f0, opts.abs_tol);
    double radius = 1.0;
    while (shell_sup(f, p, radius, evals) > tail) {
        radius *= 2.0;
        if (radius > opts.max_radius) {
            std::ostringstream msg;
            msg << "integrand shows no decay below " << tail << " out to radius "
                << opts.max_radius;
            throw convergence_error(msg.str());
        }
    }
    return radius;
}

}  // namespace

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
    if (m < 1) throw std::invalid_argument("need at least one quadrature node");
    nodes.assign(static_cast<std::size_t>(m), 0.0);
    weights.assign(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = legendre_newton(m, i);
        // weight 2 / ((1 - x^2) P'_m(x)^2)
        double p0 = 1.0, p1 = 0.0;
        for (int k = 1; k <= m; ++k) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
        }
        double deriv = m * (x * p0 - p1) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        nodes[static_cast<std::size_t>(m - 1 - i)] = x;
        nodes[static_cast<std::size_t>(i)] = -x;
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(m - 1 - i)] = w;
    }
    if (m % 2 == 1) nodes[static_cast<std::size_t>(m / 2)] = 0.0;
}

ComplexQuadResult quad_decay_complex(const ComplexIntegrand& f, int p, const QuadOptions& opts) {
    if (p < 1) throw std::invalid_argument("integration dimension must be >= 1");
    ComplexQuadResult out;
    out.radius = find_radius(f, p, opts, out.evals);

    if (p <= 3) {
        out.method = "gauss-tensor";
        int m = opts.start_nodes | 1;  // odd keeps a node at the origin
        std::complex<double> prev = tensor_pass(f, p, out.radius, m, out.evals);
        while (true) {
            int next = 2 * m - 1;
            double planned = std::pow(static_cast<double>(next), p);
            if (planned > static_cast<double>(opts.max_evals)) {
                std::ostringstream msg;
                msg << "quadrature did not converge within the evaluation budget; "
                    << "best value " << prev.real();
                throw convergence_error(msg.str());
            }
            std::complex<double> cur = tensor_pass(f, p, out.radius, next, out.evals);
            double delta = std::abs(cur - prev);
            if (delta <= std::max(opts.abs_tol, opts.rel_tol * std::abs(cur))) {
                out.value = cur;
                out.error = delta;
                return out;
            }
            prev = cur;
            m = next;
        }
    }

    out.method = "halton";
    if (p > static_cast<int>(std::size(kPrimes))) {
        throw std::invalid_argument("integration dimension beyond the Halton base table");
    }
    KahanC half, full;
    Eigen::VectorXd pt(p);
    const std::size_t n = opts.qmc_samples;
    for (std::size_t i = 0; i < n; ++i) {
        for (int a = 0; a < p; ++a) {
            pt[a] = (2.0 * halton(i + 1, kPrimes[a]) - 1.0) * out.radius;
        }
        std::complex<double> v = f(pt);
        full.add(v);
        if (i < n / 2) half.add(v);
        ++out.evals;
    }
    double volume = std::pow(2.0 * out.radius, p);
    out.value = full.value() * (volume / static_cast<double>(n));
    std::complex<double> half_value =
        half.value() * (volume / static_cast<double>(n / 2));
    out.error = std::abs(out.value - half_value);
    return out;
}

QuadResult quad_decay(const RealIntegrand& f, int p, const QuadOptions& opts) {
    ComplexQuadResult c = quad_decay_complex(
        [&f](const Eigen::VectorXd& x) { return std::complex<double>(f(x), 0.0); }, p, opts);
    return QuadResult{c.value.real(), c.error, c.evals, c.method, c.radius};
}

double quad_box(const RealIntegrand& f, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                int nodes_per_axis) {
    const int p = static_cast<int>(lo.size());
    if (hi.size() != p || p < 1) throw std::invalid_argument("box bounds disagree");
    std::vector<double> nodes, weights;
    gauss_legendre(nodes_per_axis, nodes, weights);
    Kahan acc;
    Eigen::VectorXd pt(p);
    std::vector<int> idx(static_cast<std::size_t>(p), 0);
    while (true) {
        double w = 1.0;
        for (int a = 0; a < p; ++a) {
            double mid = 0.5 * (lo[a] + hi[a]);
            double halfw = 0.5 * (hi[a] - lo[a]);
            pt[a] = mid + halfw * nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
            w *= halfw * weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
        }
        acc.add(w * f(pt));
        int carry = 0;
        while (carry < p) {
            if (++idx[static_cast<std::size_t>(carry)] < nodes_per_axis) break;
            idx[static_cast<std::size_t>(carry)] = 0;
            ++carry;
        }
        if (carry == p) break;
    }
    return acc.sum;
}

}  // namespace srheat
