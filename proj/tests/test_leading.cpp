#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "srheat/leading.hpp"
#include "srheat/steptwo.hpp"

using namespace srheat;

namespace {

Eigen::MatrixXd rotation(double lambda) {
    Eigen::MatrixXd xi(2, 2);
    xi << 0.0, lambda, -lambda, 0.0;
    return xi;
}

// n=4, p=2: two orthogonal rotation planes, one per central direction
StructureConstants two_blocks() {
    Eigen::MatrixXd c1 = Eigen::MatrixXd::Zero(4, 4);
    Eigen::MatrixXd c2 = Eigen::MatrixXd::Zero(4, 4);
    c1.topLeftCorner(2, 2) = rotation(1.0);
    c2.bottomRightCorner(2, 2) = rotation(1.0);
    return StructureConstants(4, {c1, c2});
}

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double tol, int depth) {
    double m = 0.5 * (a + b);
    double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
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

TEST_CASE("flat constant") {
    for (int d : {1, 2, 3, 6}) {
        C0Result r = c0_riemannian(d);
        CHECK(r.value == std::pow(2.0 * std::numbers::pi, -0.5 * d));
        CHECK(r.error == 0.0);
        CHECK(r.nu == d);
        CHECK(r.method == "closed-form");
    }
    CHECK_THROWS_AS(c0_riemannian(0), std::invalid_argument);
}

TEST_CASE("three-dimensional contact constant is 1/4") {
    C0Result r = c0_contact3d();
    CHECK(std::abs(r.value - 0.25) < 1e-8);
    CHECK(r.nu == 4);
    CHECK(r.method == "quadrature-1d");
    CHECK(r.error < 1e-8);

    // the underlying integral equals pi^2 (independent oracle)
    double integral = 2.0 * adaptive_simpson([](double l) { return sinh_ratio(l); }, 0.0, 80.0,
                                             1e-12);
    CHECK(std::abs(integral - std::numbers::pi * std::numbers::pi) < 1e-9);
    CHECK(std::abs(r.value - integral / std::pow(2.0 * std::numbers::pi, 2.0)) < 1e-9);
}

TEST_CASE("CR constants: k=1 closed value, k=2 oracle, monotone in k") {
    C0Result one = c0_cr(1);
    CHECK(std::abs(one.value - 0.125) < 1e-8);
    CHECK(one.nu == 4);

    C0Result two = c0_cr(2);
    CHECK(two.nu == 6);
    CHECK(two.value > 0.0);
    CHECK(two.value < one.value);
    // integral of ((lambda/2)/sinh(lambda/2))^2 over R is 2 pi^2 / 3, so the
    // k=2 constant collapses to 1/(24 pi)
    CHECK(std::abs(two.value - 1.0 / (24.0 * std::numbers::pi)) < 1e-9);
    double inv_2pi = 1.0 / (2.0 * std::numbers::pi);
    double oracle = 2.0 * adaptive_simpson(
                              [&](double l) {
                                  double f = inv_2pi * sinh_ratio(l);
                                  return f * f;
                              },
                              0.0, 80.0, 1e-14);
    CHECK(std::abs(two.value - 0.5 * inv_2pi * oracle) < 1e-9);

    CHECK_THROWS_AS(c0_cr(0), std::invalid_argument);
}

TEST_CASE("Popp density factor") {
    CHECK(std::abs(popp_factor(StructureConstants::heisenberg()) - std::sqrt(2.0)) < 1e-15);
    CHECK(popp_factor(StructureConstants(3, {})) == 1.0);
    CHECK(std::abs(popp_factor(two_blocks()) - 2.0) < 1e-14);

    // scaling every matrix by c multiplies the factor by c^p
    StructureConstants blocks = two_blocks();
    std::vector<Eigen::MatrixXd> scaled;
    for (const auto& m : blocks.matrices()) scaled.push_back(3.0 * m);
    CHECK(std::abs(popp_factor(StructureConstants(4, scaled)) - 9.0 * 2.0) < 1e-12);

    // linearly dependent central directions make the Gram matrix singular
    Eigen::MatrixXd c1 = rotation(1.0);
    CHECK_THROWS_AS(popp_factor(StructureConstants(2, {c1, 2.0 * c1})), std::invalid_argument);
}

TEST_CASE("step-two group constants: model values") {
    StructureConstants h = StructureConstants::heisenberg();

    C0Result leb = c0_steptwo(h, Measure::lebesgue);
    CHECK(std::abs(leb.value - 0.25) < 1e-8);
    CHECK(leb.nu == 4);
    CHECK(leb.method == "quadrature-1d");
    C0Result contact = c0_contact3d();
    CHECK(std::abs(leb.value - contact.value) < 2e-8);

    C0Result popp = c0_steptwo(h, Measure::popp);
    CHECK(std::abs(popp.value - std::sqrt(2.0) / 4.0) < 1e-8);
    CHECK(popp.nu == 4);

    // two orthogonal planes: the 2-D integral factors, value 1/16
    C0Result blocks = c0_steptwo(two_blocks(), Measure::lebesgue);
    CHECK(std::abs(blocks.value - 0.0625) < 1e-7);
    CHECK(blocks.nu == 8);
    CHECK(blocks.method == "quadrature-pd");
    C0Result blocks_popp = c0_steptwo(two_blocks(), Measure::popp);
    CHECK(std::abs(blocks_popp.value - 0.125) < 2e-7);

    // no center: flat closed form regardless of measure
    C0Result flat = c0_steptwo(StructureConstants(3, {}), Measure::popp);
    CHECK(flat.value == std::pow(2.0 * std::numbers::pi, -1.5));
    CHECK(flat.nu == 3);
    CHECK(flat.method == "closed-form");

    Eigen::MatrixXd c1 = rotation(1.0);
    CHECK_THROWS_AS(c0_steptwo(StructureConstants(2, {c1, 2.0 * c1}), Measure::lebesgue),
                    std::invalid_argument);
}

TEST_CASE("step-two constant matches the kernel's small-time diagonal scaling") {
    // t^{(n+2p)/2} p_t(e,e) must equal the constant at every t
    StructureConstants h = StructureConstants::heisenberg();
    GroupPoint e2 = group_identity(2, 1);
    double c0 = c0_steptwo(h, Measure::lebesgue).value;
    for (double t : {0.5, 1.0, 2.0}) {
        double val = std::pow(t, 2.0) * nilpotent_kernel(t, h, e2, e2);
        CHECK(std::abs(val - c0) < 1e-8);
    }

    StructureConstants blocks = two_blocks();
    GroupPoint e4 = group_identity(4, 2);
    double c0b = c0_steptwo(blocks, Measure::lebesgue).value;
    double valb = std::pow(1.0, 4.0) * nilpotent_kernel(1.0, blocks, e4, e4);
    CHECK(std::abs(valb - c0b) < 1e-7);
}

TEST_CASE("step-two constant is geometric, not coordinate-bound") {
    StructureConstants blocks = two_blocks();
    QuadOptions loose;
    loose.abs_tol = 1e-9;
    loose.rel_tol = 1e-9;

    // conjugating every matrix by one orthogonal Q preserves the value
    std::mt19937 gen(23);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd a(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = normal(gen);
    Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
    std::vector<Eigen::MatrixXd> conj;
    for (const auto& m : blocks.matrices()) conj.push_back(q.transpose() * m * q);
    // symmetrize away the conjugation roundoff so construction accepts it
    for (auto& m : conj) m = 0.5 * (m - m.transpose().eval());
    C0Result base = c0_steptwo(blocks, Measure::lebesgue, loose);
    C0Result rotated = c0_steptwo(StructureConstants(4, conj), Measure::lebesgue, loose);
    CHECK(std::abs(base.value - rotated.value) < 1e-7);

    // changing the basis of the center rescales Lebesgue by 1/|det P| and
    // the Popp factor by |det P|; the Popp value is invariant
    Eigen::Matrix2d pmat;
    pmat << 1.0, 1.0, 0.0, 2.0;
    std::vector<Eigen::MatrixXd> mixed(2, Eigen::MatrixXd::Zero(4, 4));
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) mixed[static_cast<std::size_t>(k)] += pmat(k, l) * blocks.matrix(l);
    StructureConstants remapped(4, mixed);
    C0Result leb = c0_steptwo(remapped, Measure::lebesgue, loose);
    CHECK(std::abs(leb.value - 0.5 * base.value) < 1e-7);
    C0Result popp_base = c0_steptwo(blocks, Measure::popp, loose);
    C0Result popp_new = c0_steptwo(remapped, Measure::popp, loose);
    CHECK(std::abs(popp_base.value - popp_new.value) < 2e-7);
}
