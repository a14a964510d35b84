#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"
#include "greenlink/special_functions.hpp"

using namespace greenlink;

namespace {

// Q1(a, b) = P(X > b^2) for X noncentral chi-square, 2 DOF, noncentrality a^2.
double boost_marcum_q1(double a, double b) {
    if (b == 0.0) return 1.0;
    if (a == 0.0) return std::exp(-0.5 * b * b);
    boost::math::non_central_chi_squared dist(2.0, a * a);
    return boost::math::cdf(boost::math::complement(dist, b * b));
}

}  // namespace

TEST_CASE("bessel_i0 matches reference values") {
    CHECK(bessel_i0(0.0) == 1.0);
    CHECK(bessel_i0(1.0) == doctest::Approx(1.2660658777520082).epsilon(1e-14));
    for (double x = 0.0; x <= 700.0; x += x < 40.0 ? 0.37 : 7.3) {
        const double ref = boost::math::cyl_bessel_i(0, x);
        CHECK(std::abs(bessel_i0(x) - ref) <= 1e-10 * ref);
    }
}

TEST_CASE("bessel_i0 around the series/asymptotic switch") {
    for (double x : {29.5, 29.999, 30.0, 30.001, 31.0}) {
        const double ref = boost::math::cyl_bessel_i(0, x);
        CHECK(std::abs(bessel_i0(x) - ref) <= 1e-13 * ref);
    }
}

TEST_CASE("bessel_i0 is >= 1 and increasing") {
    double prev = bessel_i0(0.0);
    for (double x = 0.05; x < 50.0; x += 0.05) {
        const double v = bessel_i0(x);
        CHECK(v >= 1.0);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("bessel_i0 overflow is signalled") {
    CHECK_THROWS_AS(bessel_i0(800.0), std::overflow_error);
    CHECK(std::isfinite(bessel_i0e(800.0)));
    CHECK(bessel_i0e(800.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI * 800.0)).epsilon(1e-3));
}

TEST_CASE("bessel_i0e equals e^-x I0(x)") {
    for (double x : {0.0, 0.5, 3.0, 29.0, 35.0, 120.0}) {
        CHECK(bessel_i0e(x) == doctest::Approx(std::exp(-x) * boost::math::cyl_bessel_i(0, x)).epsilon(1e-12));
    }
}

TEST_CASE("gaussian_q") {
    CHECK(gaussian_q(0.0) == 0.5);
    CHECK(gaussian_q(1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-14));
    CHECK(gaussian_q(10.0) == doctest::Approx(7.619853024160527e-24).epsilon(1e-12));
}

TEST_CASE("marcum_q1 edge cases") {
    CHECK(marcum_q1(3.0, 0.0) == 1.0);
    CHECK(marcum_q1(0.0, 0.0) == 1.0);
    for (double b : {0.1, 1.0, 2.5, 7.0}) {
        CHECK(marcum_q1(0.0, b) == doctest::Approx(std::exp(-0.5 * b * b)).epsilon(1e-14));
    }
    CHECK(marcum_q1(1.0, 1.0) == doctest::Approx(0.7328798037968203).epsilon(1e-12));
}

TEST_CASE("marcum_q1 against noncentral chi-square") {
    for (double a = 0.0; a <= 30.0; a += 1.7) {
        for (double b = 0.0; b <= 30.0; b += 1.3) {
            const double ref = boost_marcum_q1(a, b);
            CAPTURE(a);
            CAPTURE(b);
            CHECK(std::abs(marcum_q1(a, b) - ref) <= 1e-10);
            CHECK(std::abs(marcum_q1_complement(a, b) - (1.0 - ref)) <= 1e-10);
        }
    }
}

TEST_CASE("marcum_q1 complement keeps relative accuracy in the tails") {
    // 1 - Q1(a, b) for a >> b is tiny; compare against the CDF directly.
    for (auto [a, b] : {std::pair{20.0, 2.0}, std::pair{30.0, 5.0}, std::pair{12.0, 1.0}}) {
        boost::math::non_central_chi_squared dist(2.0, a * a);
        const double ref = boost::math::cdf(dist, b * b);
        CHECK(marcum_q1_complement(a, b) == doctest::Approx(ref).epsilon(1e-8));
    }
    // Q1(b, a) for b << a is tiny too.
    CHECK(marcum_q1(2.0, 20.0) == doctest::Approx(boost_marcum_q1(2.0, 20.0)).epsilon(1e-8));
}

TEST_CASE("marcum_q1 monotonicity on a 20x20 grid") {
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 19; ++j) {
            const double a = 0.5 * i;
            const double b = 0.5 * j;
            CHECK(marcum_q1(a, b + 0.5) <= marcum_q1(a, b));
            CHECK(marcum_q1(b + 0.5, a) >= marcum_q1(b, a));
        }
    }
}

TEST_CASE("marcum_q1 stays in [0, 1]") {
    for (double a : {0.0, 1e-8, 0.3, 50.0, 300.0}) {
        for (double b : {0.0, 1e-8, 0.3, 50.0, 300.0}) {
            const double q = marcum_q1(a, b);
            CHECK(q >= 0.0);
            CHECK(q <= 1.0);
        }
    }
}
