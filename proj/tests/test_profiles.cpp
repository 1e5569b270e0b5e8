#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "zonoid/numerics.hpp"
#include "zonoid/profiles.hpp"

using namespace zonoid;
using namespace zonoid::profiles;
constexpr double pi = std::numbers::pi;

TEST_CASE("barrel norm profile: branch values and breakpoint continuity") {
    const BarrelParams p31(3, 1.0);
    CHECK(barrel_norm_profile(p31, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(barrel_norm_profile(p31, pi / 2) == doctest::Approx(0.5).epsilon(1e-14));

    // both branches meet at arctan r
    const BarrelParams p32(3, 2.0);
    const double br = std::atan(2.0);
    const double first = std::cos(br);
    const double c = std::cos(br);
    const double second = 1.0 / (2.0 * std::sin(br) + std::sqrt(1.0 - 4.0 * c * c));
    CHECK(first == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
    CHECK(std::abs(first - second) <= 1e-12);
    CHECK(barrel_norm_profile(p32, br) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-13));

    for (double r = 0.1; r <= 3.0 + 1e-9; r += 0.1) {
        const double a = std::atan(r);
        const double cc = std::cos(a);
        const double b2 = 1.0 / (r * std::sin(a) + std::sqrt(1.0 - r * r * cc * cc));
        CHECK(std::abs(cc - b2) <= 1e-12);
    }

    CHECK_THROWS_AS(barrel_norm_profile(p31, -0.2), std::domain_error);
    CHECK_THROWS_AS(barrel_norm_profile(p31, 2.0), std::domain_error);
    CHECK_THROWS_AS(BarrelParams(3, -1.0), std::invalid_argument);
}

TEST_CASE("support and polar radial profiles") {
    CHECK(barrel_support_profile(BarrelParams(3, 1.0), pi / 2) == doctest::Approx(2.0));
    CHECK(barrel_support_profile(BarrelParams(3, 0.5), 0.0) == doctest::Approx(1.0));
    CHECK(barrel_support_profile(BarrelParams(3, 0.5), pi / 2) == doctest::Approx(1.5));

    CHECK(polar_radial_profile(BarrelParams(3, 1.0), pi / 2) == doctest::Approx(0.5));
    CHECK(polar_radial_profile(BarrelParams(3, 1.0), 0.0) == doctest::Approx(1.0));

    // reciprocity: radial of the polar is the reciprocal of the support
    for (double r : {0.3, 1.0, 2.5})
        for (int i = 0; i <= 60; ++i) {
            const double phi = i / 60.0 * pi / 2;
            const BarrelParams p(4, r);
            CHECK(std::abs(polar_radial_profile(p, phi) * barrel_support_profile(p, phi) - 1.0) <=
                  1e-14);
        }
}

TEST_CASE("polar section curve: formula and parametric identity") {
    CHECK(polar_section_curve(0.0) == doctest::Approx(0.5));
    CHECK(polar_section_curve(1.0) == doctest::Approx(0.0).scale(1.0));
    CHECK(polar_section_curve(0.6) == doctest::Approx(0.32));
    CHECK_THROWS_AS(polar_section_curve(1.2), std::domain_error);

    // boundary point of the polar at angle phi lies on the section curve
    const BarrelParams p(3, 1.0);
    for (int i = 0; i <= 90; ++i) {
        const double phi = i / 90.0 * pi / 2;
        const double rho = polar_radial_profile(p, phi);
        const double x = rho * std::cos(phi);
        const double y = rho * std::sin(phi);
        CHECK(std::abs(y - polar_section_curve(x)) <= 1e-12);
    }
}

TEST_CASE("gauge: poles, equator, facet membership") {
    const BarrelParams p(4, 1.0);
    CHECK(gauge(p, std::array{0.0, 0.0, 0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gauge(p, std::array{2.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gauge(p, std::array{0.5, 0.0, 0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gauge(p, std::array{0.0, 0.0, 0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(gauge(p, std::array{1.0, 0.0}), std::invalid_argument);

    // facet points e_n + c with |c| <= r decompose as ball + disc points
    for (double cx : {0.0, 0.3, 0.99}) {
        CHECK(std::abs(gauge(p, std::array{cx, 0.0, 0.0, 1.0}) - 1.0) <= 1e-12);
    }
    CHECK(gauge(p, std::array{1.5, 0.0, 0.0, 1.0}) > 1.0);
}

TEST_CASE("gauge: dimension independence and radial duality") {
    // same polar angle and euclidean norm in n=3 and n=4 give the same gauge
    for (double r : {0.5, 1.0, 2.0})
        for (int i = 0; i <= 30; ++i) {
            const double phi = i / 30.0 * pi / 2;
            const double len = 1.7;
            const std::array<double, 3> q3{len * std::sin(phi), 0.0, len * std::cos(phi)};
            const std::array<double, 4> q4{len * std::sin(phi), 0.0, 0.0, len * std::cos(phi)};
            CHECK(std::abs(gauge(BarrelParams(3, r), q3) - gauge(BarrelParams(4, r), q4)) <=
                  1e-14);
        }

    // radial function recovered by bisection on the gauge inverts the norm
    const BarrelParams p(3, 0.8);
    for (int i = 0; i <= 20; ++i) {
        const double phi = i / 20.0 * pi / 2;
        const auto along_ray = [&](double rho) {
            const std::array<double, 3> q{rho * std::sin(phi), 0.0, rho * std::cos(phi)};
            return gauge(p, q) - 1.0;
        };
        const double rho = numerics::bisect_root(along_ray, 1e-6, 4.0, 1e-12);
        CHECK(std::abs(barrel_norm_profile(p, phi) * rho - 1.0) <= 1e-9);
    }
}

TEST_CASE("body inclusion: radial <= support, strict away from aligned normals") {
    for (double r : {0.4, 1.0, 1.7}) {
        const BarrelParams p(3, r);
        for (int i = 0; i <= 100; ++i) {
            const double phi = i / 100.0 * pi / 2;
            const double radial = 1.0 / barrel_norm_profile(p, phi);
            const double support = barrel_support_profile(p, phi);
            CHECK(radial <= support + 1e-12);
            if (phi > 0.05 && phi < pi / 2 - 0.05) CHECK(radial < support - 1e-6);
        }
    }
}

TEST_CASE("support_sum: ball plus coaxial sub-ball gives the barrel support") {
    const auto ball = AngleProfile::support(1.0, 0.0);
    const auto sub = AngleProfile::support(0.0, 0.7);
    const auto sum = support_sum(ball, sub);
    CHECK(sum.kind() == ProfileKind::Support);
    for (int i = 0; i <= 50; ++i) {
        const double phi = i / 50.0 * pi / 2;
        CHECK(sum.value(phi) ==
              doctest::Approx(barrel_support_profile(BarrelParams(3, 0.7), phi)).epsilon(1e-15));
    }

    // adding a point (h == 0) changes nothing
    const auto with_point = support_sum(ball, AngleProfile::support(0.0, 0.0));
    CHECK(with_point.value(0.31) == doctest::Approx(1.0));

    CHECK_THROWS_AS(support_sum(AngleProfile::barrel_norm(1.0), ball), IncompatibleKindError);
}

TEST_CASE("support_sum: sampled grids merge") {
    std::vector<double> g1, v1, g2, v2;
    for (int i = 0; i <= 8; ++i) {
        g1.push_back(i / 8.0 * pi / 2);
        v1.push_back(1.0 + 0.5 * std::sin(g1.back()));
    }
    for (int i = 0; i <= 11; ++i) {
        g2.push_back(i / 11.0 * pi / 2);
        v2.push_back(0.25 * std::sin(g2.back()));
    }
    const auto s1 = AngleProfile::sampled(g1, v1, ProfileRole::Support);
    const auto s2 = AngleProfile::sampled(g2, v2, ProfileRole::Support);
    const auto sum = support_sum(s1, s2);
    CHECK(sum.kind() == ProfileKind::Sampled);
    CHECK(sum.samples()->nodes().size() == 19);  // 9 + 12 nodes, shared endpoints merged
    // exact at every merged node, re-interpolated in between
    for (double phi : sum.samples()->nodes())
        CHECK(sum.value(phi) == doctest::Approx(s1.value(phi) + s2.value(phi)).epsilon(1e-13));
    for (double phi : {0.2, 0.9, 1.4})
        CHECK(sum.value(phi) == doctest::Approx(s1.value(phi) + s2.value(phi)).epsilon(1e-3));
}

TEST_CASE("sampled profiles forbid extrapolation and bad grids") {
    const auto s = AngleProfile::sampled({0.0, 0.7, pi / 2}, {1.0, 1.1, 1.2}, ProfileRole::Norm);
    CHECK_THROWS_AS(s.value(-0.3), std::domain_error);
    CHECK_THROWS_AS(s.value(1.9), std::domain_error);
    CHECK_THROWS_AS(AngleProfile::sampled({0.0, 0.5}, {1.0, 1.0}, ProfileRole::Norm),
                    std::invalid_argument);  // grid must reach pi/2
    CHECK_THROWS_AS(AngleProfile::sampled({0.0, 0.0, pi / 2}, {1.0, 1.0, 1.0}, ProfileRole::Norm),
                    std::invalid_argument);  // strictly increasing
}

TEST_CASE("cos/sin parameterization helpers") {
    const auto f = AngleProfile::barrel_norm(0.8);
    CHECK(f.value_at_sin(0.0) == doctest::Approx(1.0));
    CHECK(f.value_at_cos(1.0) == doctest::Approx(1.0));
    CHECK(f.value_at_sin(1.0) == doctest::Approx(f.value(pi / 2)));
    for (double x : {0.1, 0.5, 0.9}) {
        CHECK(f.value_at_cos(x) == doctest::Approx(f.value(std::acos(x))));
        CHECK(f.value_at_sin(x) == doctest::Approx(f.value(std::asin(x))));
    }
    CHECK_THROWS_AS(f.value_at_cos(1.5), std::domain_error);
}

TEST_CASE("value_folded applies the even and equatorial reflections") {
    const auto f = AngleProfile::barrel_norm(1.2);
    CHECK(f.value_folded(-0.4) == doctest::Approx(f.value(0.4)));
    CHECK(f.value_folded(pi - 0.4) == doctest::Approx(f.value(0.4)));
    CHECK(f.value_folded(pi / 2 + 0.2) == doctest::Approx(f.value(pi / 2 - 0.2)));
}
