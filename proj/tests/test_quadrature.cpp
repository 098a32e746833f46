#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "srheat/quadrature.hpp"

using namespace srheat;

namespace {

// Adaptive Simpson, used as an independent oracle for the 1-D integrals.
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth + 1) +
           simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth + 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    double m = 0.5 * (a + b);
    return simpson(f, a, b, f(a), f(m), f(b), tol, 0);
}

double sinh_ratio(double lambda) {
    double h = 0.5 * lambda;
    if (std::abs(h) < 1e-8) return 1.0 - h * h / 6.0;
    return h / std::sinh(h);
}

}  // namespace

TEST_CASE("Gauss-Legendre nodes: frozen 5-point rule, exactness, weight sum") {
    std::vector<double> x, w;
    gauss_legendre(5, x, w);
    // classical values for the 5-point rule
    CHECK(std::abs(x[0] + 0.9061798459386640) < 1e-14);
    CHECK(std::abs(x[1] + 0.5384693101056831) < 1e-14);
    CHECK(std::abs(x[2]) < 1e-15);
    CHECK(std::abs(x[3] - 0.5384693101056831) < 1e-14);
    CHECK(std::abs(x[4] - 0.9061798459386640) < 1e-14);
    CHECK(std::abs(w[0] - 0.2369268850561891) < 1e-14);
    CHECK(std::abs(w[1] - 0.4786286704993665) < 1e-14);
    CHECK(std::abs(w[2] - 0.5688888888888889) < 1e-14);

    for (int m : {1, 2, 7, 16, 33}) {
        gauss_legendre(m, x, w);
        double total = 0.0;
        for (double wi : w) total += wi;
        CHECK(std::abs(total - 2.0) < 1e-13);
        // exact for polynomials up to degree 2m-1
        for (int deg = 0; deg <= 2 * m - 1; ++deg) {
            double got = 0.0;
            for (int i = 0; i < m; ++i) got += w[static_cast<std::size_t>(i)] * std::pow(x[static_cast<std::size_t>(i)], deg);
            double want = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
            CHECK(std::abs(got - want) < 1e-12);
        }
    }
    CHECK_THROWS_AS(gauss_legendre(0, x, w), std::invalid_argument);
}

TEST_CASE("decay quadrature: Gaussian mass, sinh-ratio integral, Fubini") {
    QuadResult gauss = quad_decay(
        [](const Eigen::VectorXd& x) {
            return std::exp(-0.5 * x[0] * x[0]) / std::sqrt(2.0 * std::numbers::pi);
        },
        1);
    CHECK(gauss.method == "gauss-tensor");
    CHECK(std::abs(gauss.value - 1.0) < 1e-10);
    CHECK(gauss.error >= 0.0);
    CHECK(gauss.radius > 6.0);

    QuadResult ratio = quad_decay([](const Eigen::VectorXd& l) { return sinh_ratio(l[0]); }, 1);
    double pi_sq = std::numbers::pi * std::numbers::pi;
    CHECK(std::abs(ratio.value - pi_sq) < 1e-8);
    // independent oracle agrees (integrand is even; integrate half-line)
    double oracle = 2.0 * adaptive_simpson([](double l) { return sinh_ratio(l); }, 0.0, 80.0, 1e-12);
    CHECK(std::abs(ratio.value - oracle) < 1e-8);

    // product integrand, 2-D answer = product of 1-D answers
    auto f1 = [](double x) { return std::exp(-0.5 * x * x); };
    auto f2 = [](double y) { return 1.0 / std::cosh(y); };
    QuadResult a = quad_decay([&](const Eigen::VectorXd& x) { return f1(x[0]); }, 1);
    QuadResult b = quad_decay([&](const Eigen::VectorXd& x) { return f2(x[0]); }, 1);
    QuadResult ab =
        quad_decay([&](const Eigen::VectorXd& x) { return f1(x[0]) * f2(x[1]); }, 2);
    CHECK(ab.method == "gauss-tensor");
    CHECK(std::abs(ab.value - a.value * b.value) < 1e-8);
}

TEST_CASE("decay quadrature: complex integrand and symmetric phase cancellation") {
    ComplexQuadResult res = quad_decay_complex(
        [](const Eigen::VectorXd& x) {
            return std::exp(std::complex<double>(-0.5 * x[0] * x[0], x[0]));
        },
        1);
    double expected = std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5);
    CHECK(std::abs(res.value.real() - expected) < 1e-9);
    // odd imaginary part cancels on the symmetric rule
    CHECK(std::abs(res.value.imag()) < 1e-13);
}

TEST_CASE("decay quadrature error paths") {
    // decays, but far too slowly to truncate within the allowed radius
    CHECK_THROWS_AS(quad_decay([](const Eigen::VectorXd& x) { return 1.0 / (1.0 + x[0] * x[0]); },
                               1),
                    convergence_error);

    // refinement budget too small to reach agreement
    QuadOptions tight;
    tight.abs_tol = 1e-15;
    tight.rel_tol = 1e-15;
    tight.max_evals = 64;
    CHECK_THROWS_AS(
        quad_decay([](const Eigen::VectorXd& x) { return std::exp(-0.5 * x[0] * x[0]); }, 1,
                   tight),
        convergence_error);

    CHECK_THROWS_AS(quad_decay([](const Eigen::VectorXd&) { return 1.0; }, 0),
                    std::invalid_argument);
}

TEST_CASE("low-discrepancy fallback beyond three dimensions") {
    QuadOptions opts;
    opts.qmc_samples = 1u << 18;
    QuadResult res = quad_decay(
        [](const Eigen::VectorXd& x) {
            return std::exp(-0.5 * x.squaredNorm()) /
                   std::pow(2.0 * std::numbers::pi, 2.0);
        },
        4, opts);
    CHECK(res.method == "halton");
    CHECK(std::abs(res.value - 1.0) < 2e-2);
    CHECK(res.error > 0.0);

    // deterministic: the exact same call gives the exact same bits
    QuadResult res2 = quad_decay(
        [](const Eigen::VectorXd& x) {
            return std::exp(-0.5 * x.squaredNorm()) /
                   std::pow(2.0 * std::numbers::pi, 2.0);
        },
        4, opts);
    CHECK(res.value == res2.value);
    CHECK(res.error == res2.error);
}

TEST_CASE("fixed-box rule") {
    Eigen::VectorXd lo(2), hi(2);
    lo << 0.0, 0.0;
    hi << 1.0, 1.0;
    double xy = quad_box([](const Eigen::VectorXd& x) { return x[0] * x[1]; }, lo, hi, 9);
    CHECK(std::abs(xy - 0.25) < 1e-14);

    Eigen::VectorXd glo(1), ghi(1);
    glo << -8.0;
    ghi << 8.0;
    double mass = quad_box(
        [](const Eigen::VectorXd& x) {
            return std::exp(-0.5 * x[0] * x[0]) / std::sqrt(2.0 * std::numbers::pi);
        },
        glo, ghi, 65);
    CHECK(std::abs(mass - 1.0) < 1e-12);

    CHECK_THROWS_AS(quad_box([](const Eigen::VectorXd&) { return 0.0; }, lo, Eigen::VectorXd(1), 5),
                    std::invalid_argument);
}
