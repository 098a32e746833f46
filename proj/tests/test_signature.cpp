#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "srheat/signature.hpp"

using namespace srheat;

namespace {

double max_abs_diff(const TensorPoly& a, const TensorPoly& b) {
    TensorPoly d = a;
    d -= b;
    return d.max_abs();
}

PiecewiseLinearPath random_path(int dim, std::size_t segments, std::mt19937& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> times;
    std::vector<std::vector<double>> points;
    std::vector<double> p(static_cast<std::size_t>(dim), 0.0);
    times.push_back(0.0);
    points.push_back(p);
    for (std::size_t s = 1; s <= segments; ++s) {
        times.push_back(static_cast<double>(s));
        for (auto& c : p) c += unif(rng);
        points.push_back(p);
    }
    return {times, points};
}

}  // namespace

TEST_CASE("path validation") {
    CHECK_THROWS_AS(PiecewiseLinearPath({0.0}, {{0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseLinearPath({0.0, 0.0}, {{0.0}, {1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseLinearPath({0.0, 1.0}, {{0.0}, {1.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseLinearPath({0.0, 1.0, 2.0}, {{0.0}, {1.0}}), std::invalid_argument);
}

TEST_CASE("one segment gives the exponential of its increment") {
    PiecewiseLinearPath path({0.0, 1.0}, {{0.0, 0.0, 0.0}, {0.5, -1.25, 2.0}});
    GrouplikeTensor sig = pwl_signature(path, 4);

    LieElement inc(3, 4);
    inc.set_coeff(Word{1}, 0.5);
    inc.set_coeff(Word{2}, -1.25);
    inc.set_coeff(Word{3}, 2.0);
    CHECK(max_abs_diff(sig, exp_tensor(inc)) <= 1e-13);

    // log of a straight segment has no higher-grade coordinates
    LieElement ls = log_signature(path, 4);
    for (const auto& [w, c] : ls.coeffs()) {
        if (w.size() > 1) CHECK(std::abs(c) <= 1e-14);
    }
}

TEST_CASE("Chen identity: concatenation multiplies signatures") {
    std::mt19937 rng(5);
    PiecewiseLinearPath path = random_path(2, 8, rng);
    const auto& ts = path.times();
    const auto& ps = path.points();
    std::size_t cut = 3;
    PiecewiseLinearPath first({ts.begin(), ts.begin() + static_cast<std::ptrdiff_t>(cut + 1)},
                              {ps.begin(), ps.begin() + static_cast<std::ptrdiff_t>(cut + 1)});
    PiecewiseLinearPath second({ts.begin() + static_cast<std::ptrdiff_t>(cut), ts.end()},
                               {ps.begin() + static_cast<std::ptrdiff_t>(cut), ps.end()});
    for (int N : {1, 2, 3, 4}) {
        GrouplikeTensor whole = pwl_signature(path, N);
        GrouplikeTensor glued = chen_concat(pwl_signature(first, N), pwl_signature(second, N));
        CHECK(max_abs_diff(whole, glued) <= 1e-12);
    }

    TensorPoly not_grouplike(2, 2);
    CHECK_THROWS_AS(chen_concat(pwl_signature(path, 2), not_grouplike), std::domain_error);
}

TEST_CASE("reversal inverts the signature") {
    std::mt19937 rng(9);
    PiecewiseLinearPath path = random_path(2, 6, rng);
    std::vector<std::vector<double>> rev_points(path.points().rbegin(), path.points().rend());
    PiecewiseLinearPath reversed(path.times(), rev_points);
    GrouplikeTensor prod = chen_concat(pwl_signature(path, 4), pwl_signature(reversed, 4));
    CHECK(max_abs_diff(prod, TensorPoly::unit(2, 4)) <= 1e-12);
}

TEST_CASE("signature ignores the time parametrization") {
    std::mt19937 rng(13);
    PiecewiseLinearPath path = random_path(3, 5, rng);
    std::vector<double> warped = path.times();
    for (auto& t : warped) t = t * t + 0.5 * t;
    PiecewiseLinearPath reparam(warped, path.points());
    CHECK(pwl_signature(path, 3) == pwl_signature(reparam, 3));
}

TEST_CASE("zero-length segments do not contribute") {
    PiecewiseLinearPath plain({0.0, 1.0, 2.0}, {{0.0, 0.0}, {1.0, 0.5}, {1.5, 2.0}});
    PiecewiseLinearPath stalled({0.0, 0.5, 1.0, 2.0},
                                {{0.0, 0.0}, {1.0, 0.5}, {1.0, 0.5}, {1.5, 2.0}});
    CHECK(pwl_signature(plain, 3) == pwl_signature(stalled, 3));
}

TEST_CASE("negating the path flips odd grades exactly") {
    std::mt19937 rng(17);
    PiecewiseLinearPath path = random_path(2, 7, rng);
    std::vector<std::vector<double>> neg = path.points();
    for (auto& p : neg) {
        for (auto& c : p) c = -c;
    }
    PiecewiseLinearPath negated(path.times(), neg);
    GrouplikeTensor sig = pwl_signature(path, 4);
    GrouplikeTensor sig_neg = pwl_signature(negated, 4);
    for (const auto& [w, c] : sig.coeffs()) {
        CHECK(sig_neg.coeff(w) == (w.size() % 2 == 0 ? c : -c));
    }
}

TEST_CASE("spatial scaling dilates the signature") {
    std::mt19937 rng(21);
    PiecewiseLinearPath path = random_path(2, 6, rng);
    const double c = 0.35;
    std::vector<std::vector<double>> scaled = path.points();
    for (auto& p : scaled) {
        for (auto& x : p) x *= c;
    }
    PiecewiseLinearPath scaled_path(path.times(), scaled);
    CHECK(max_abs_diff(pwl_signature(scaled_path, 4), dilate(pwl_signature(path, 4), c)) <= 1e-12);
}

TEST_CASE("levy area of simple loops") {
    // counterclockwise right triangle of area 1/2
    PiecewiseLinearPath triangle({0, 1, 2, 3},
                                 {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 0.0}});
    CHECK(levy_area(triangle) == doctest::Approx(0.5).epsilon(1e-14));

    // clockwise unit square, translated away from the origin
    PiecewiseLinearPath square({0, 1, 2, 3, 4},
                               {{2.0, 3.0}, {2.0, 4.0}, {3.0, 4.0}, {3.0, 3.0}, {2.0, 3.0}});
    CHECK(levy_area(square) == doctest::Approx(-1.0).epsilon(1e-14));

    // closed loop: grade-1 part of the signature vanishes
    GrouplikeTensor sig = pwl_signature(square, 2);
    CHECK(sig.coeff(Word{1}) == 0.0);
    CHECK(sig.coeff(Word{2}) == 0.0);

    PiecewiseLinearPath in3d({0, 1}, {{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}});
    CHECK_THROWS_AS(levy_area(in3d), std::invalid_argument);
}

TEST_CASE("levy area equals the antisymmetric grade-2 log coordinate") {
    std::mt19937 rng(29);
    for (int rep = 0; rep < 10; ++rep) {
        PiecewiseLinearPath path = random_path(2, 9, rng);
        LieElement ls = log_signature(path, 2);
        CHECK(std::abs(ls.coeff(Word{1, 2}) - levy_area(path)) <= 1e-12);
    }
}
