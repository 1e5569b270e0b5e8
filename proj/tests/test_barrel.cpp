#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zonoid/barrel.hpp"
#include "zonoid/numerics.hpp"

using namespace zonoid;
using namespace zonoid::barrel;
constexpr double pi = std::numbers::pi;

TEST_CASE("breakpoint latitude") {
    CHECK(breakpoint_x(1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(breakpoint_x(2.0) == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK(breakpoint_x(1e-9) == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
    CHECK(breakpoint_x(0.7) == doctest::Approx(std::sin(std::atan(0.7))).epsilon(1e-15));
    CHECK_THROWS_AS(breakpoint_x(0.0), std::domain_error);
}

TEST_CASE("radon preimage: continuity across the breakpoint") {
    for (double r : {0.5, 1.0, 1.3, 2.0}) {
        const double xr = breakpoint_x(r);
        const double expect = (1.0 - r * r) / std::sqrt(1.0 + r * r);
        CHECK(radon_preimage(r, std::nextafter(xr, 0.0)) == doctest::Approx(expect).epsilon(1e-10));
        CHECK(radon_preimage(r, std::nextafter(xr, 1.0)) == doctest::Approx(expect).epsilon(1e-10));
    }
    CHECK(radon_preimage(0.5, 0.0) == doctest::Approx(1.0));  // (1-0)/1 at the pole
    CHECK(radon_preimage(1.0, breakpoint_x(1.0)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("radon preimage derivatives agree with finite differences") {
    for (double r : {0.5, 0.8, 1.0, 1.3}) {
        const double xr = breakpoint_x(r);
        for (double x : {0.05, 0.5 * xr, xr - 0.03, xr + 0.03, 0.9}) {
            if (!(x > 0.01 && x < 0.95)) continue;
            if (std::abs(x - xr) < 0.02) continue;
            const double lo = x < xr ? 0.0 : xr, hi = x < xr ? xr : 0.95;
            const double fd1 = numerics::fd_derivative(
                [&](double u) { return radon_preimage(r, u); }, x, 1, 1e-4, lo, hi);
            CHECK(radon_preimage_d1(r, x) == doctest::Approx(fd1).epsilon(1e-6));
            const double fd2 = numerics::fd_derivative(
                [&](double u) { return radon_preimage_d1(r, u); }, x, 1, 1e-4, lo, hi);
            CHECK(radon_preimage_d2(r, x) == doctest::Approx(fd2).epsilon(1e-5));
        }
    }
    CHECK_THROWS_AS(radon_preimage_d1(1.0, breakpoint_x(1.0)), std::domain_error);
}

TEST_CASE("jump of the preimage derivative") {
    CHECK(radon_preimage_jump(1.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(radon_preimage_jump(2.0) == doctest::Approx(50.0).epsilon(1e-15));
    CHECK(radon_preimage_jump(1e-8) == doctest::Approx(0.0).scale(1.0).epsilon(1e-7));

    // one-sided limits at r = 1: -4 from the left, 0 from the right
    const double xr = breakpoint_x(1.0);
    const auto left = numerics::one_sided_limit(
        [&](double x) { return radon_preimage_d1(1.0, x); }, xr, numerics::Side::Left);
    const auto right = numerics::one_sided_limit(
        [&](double x) { return radon_preimage_d1(1.0, x); }, xr, numerics::Side::Right);
    CHECK(left.value == doctest::Approx(-4.0).epsilon(1e-10));
    CHECK(right.value == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));

    // measured limit difference matches the closed form across radii
    for (double r : {0.3, 0.8, 1.0, 1.5, 2.0}) {
        const double b = breakpoint_x(r);
        const double lo = numerics::one_sided_limit(
                              [&](double x) { return radon_preimage_d1(r, x); }, b,
                              numerics::Side::Left)
                              .value;
        const double hi = numerics::one_sided_limit(
                              [&](double x) { return radon_preimage_d1(r, x); }, b,
                              numerics::Side::Right)
                              .value;
        CHECK(std::abs((hi - lo) - radon_preimage_jump(r)) <= 1e-9 * std::max(1.0, radon_preimage_jump(r)));
    }
}

TEST_CASE("atom identity: (1 - x_r^2) c(r) = r (1 + r^2)") {
    for (double r = 0.1; r <= 2.0 + 1e-9; r += 0.1) {
        const double xr = breakpoint_x(r);
        CHECK(std::abs((1.0 - xr * xr) * radon_preimage_jump(r) - r * (r * r + 1.0)) <=
              1e-14 * std::max(1.0, r * (r * r + 1.0)));
    }
}

TEST_CASE("closed-form generating distribution") {
    SUBCASE("r = 1: pure atom, exactly zero density") {
        const auto g = generating_distribution_closed(1.0);
        CHECK(g.distribution.density().is_exactly_zero());
        REQUIRE(g.distribution.atoms().size() == 1);
        CHECK(g.distribution.atoms()[0].x == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(g.distribution.atoms()[0].weight ==
              doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-15));
        CHECK(g.distribution.is_measure());

        // pairing against the constant test function picks out the atom weight
        const auto one = numerics::SmoothFn::from_polynomial(numerics::Polynomial({1.0}));
        CHECK(distributions::pair_with_test_function(g.distribution, one) ==
              doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-14));
    }

    SUBCASE("small r approaches the euclidean ball") {
        const auto g = generating_distribution_closed(1e-6);
        CHECK(g.atom_weight <= 1e-6);
        for (double x : {0.1, 0.5, 0.9})
            CHECK(g.distribution.density().value(x) ==
                  doctest::Approx(3.0 / (8.0 * pi)).epsilon(1e-5));
    }

    SUBCASE("r = 2: negative density on the outer branch") {
        const auto g = generating_distribution_closed(2.0);
        const double xr = breakpoint_x(2.0);
        CHECK(g.distribution.density().value(0.5 * xr) == 0.0);
        for (double x : {xr + 0.02, 0.95})
            CHECK(g.distribution.density().value(x) < 0.0);
        CHECK_FALSE(g.distribution.is_measure());
        // atom itself stays positive
        CHECK(g.atom_weight > 0.0);
    }

    SUBCASE("density matches the closed form pointwise") {
        for (double r : {0.5, 1.3}) {
            const auto g = generating_distribution_closed(r);
            for (double x = breakpoint_x(r) + 0.01; x < 1.0; x += 0.04) {
                const double A = std::sqrt(1.0 - r * r + r * r * x * x);
                CHECK(g.distribution.density().value(x) ==
                      doctest::Approx(3.0 * (1.0 - r * r) / (8.0 * pi * std::pow(A, 5.0)))
                          .epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("zonoid threshold in closed form") {
    for (double r = 0.1; r <= 2.0 + 1e-9; r += 0.1)
        CHECK(is_polar_zonoid(r) == (r <= 1.0));
    CHECK(is_polar_zonoid(1.0));
    CHECK_FALSE(is_polar_zonoid(1.01));
    CHECK(is_polar_zonoid(0.999999));
}

TEST_CASE("n = 3 polar generating density") {
    const double c = 0.5;
    // phi = 0: (1+1) / ((1+1)^2 * 1 * 1) = 1/2
    CHECK(polar_generating_density_3d(0.0, c) == doctest::Approx(c / 2.0).epsilon(1e-14));
    for (double phi : {pi / 4 + 0.01, pi / 3, pi / 2})
        CHECK(polar_generating_density_3d(phi, c) == 0.0);
    CHECK_THROWS_AS(polar_generating_density_3d(pi / 4, c), std::domain_error);
    CHECK_THROWS_AS(polar_generating_density_3d(-0.1, c), std::domain_error);
    CHECK_THROWS_AS(polar_generating_density_3d(0.3, -1.0), std::domain_error);

    // inverse-square-root blow-up rate toward pi/4: the remaining factor
    // tends to cos^2(pi/4) / cos^3(pi/4) = sqrt(2)
    for (double eps : {1e-4, 1e-6, 1e-8}) {
        const double v = polar_generating_density_3d(pi / 4 - eps, c);
        const double rate = v * std::sqrt(std::cos(2.0 * (pi / 4 - eps)));
        CHECK(rate == doctest::Approx(c * std::sqrt(2.0)).epsilon(0.01));
    }

    // assembled distribution: measure with the flagged singular piece
    const auto d = polar_generating_distribution_3d(c);
    CHECK(d.dimension() == 3);
    CHECK(d.is_measure());
    REQUIRE(d.density().pieces().size() == 2);
    CHECK(d.density().pieces()[1].left_singularity().singular);
    CHECK(d.density().pieces()[1].left_singularity().exponent == doctest::Approx(-0.5));
    // the x-parameterization agrees with the angle parameterization
    for (double phi : {0.1, 0.5, pi / 4 - 0.01})
        CHECK(d.density().value(std::cos(phi)) ==
              doctest::Approx(polar_generating_density_3d(phi, c)).epsilon(1e-12));
}
