#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zonoid/certify.hpp"

using namespace zonoid;
using namespace zonoid::certify;
using distributions::LatitudeMeasure;
using distributions::PiecewiseSmoothFn;
using distributions::SphericalDistributionRS;
using profiles::AngleProfile;
using profiles::BarrelParams;
constexpr double pi = std::numbers::pi;

TEST_CASE("grids") {
    const auto xs = chebyshev_latitudes(9);
    CHECK(xs.front() == 0.0);
    CHECK(xs.back() == 1.0);
    CHECK(std::is_sorted(xs.begin(), xs.end()));
    // clustering: the first cell is much shorter than the central one
    CHECK(xs[1] - xs[0] < 0.3 * (xs[5] - xs[4]));
    const auto ts = uniform_directions(5);
    CHECK(ts[1] == doctest::Approx(0.25));
}

TEST_CASE("forward residual of the closed measures") {
    const auto ts = uniform_directions(41);

    // atoms only at r = 1: exact kernel path
    const LatitudeMeasure mu1(barrel::generating_distribution_closed(1.0).distribution);
    CHECK(forward_residual(mu1, AngleProfile::barrel_norm(1.0), 4, ts) <= 1e-10);

    // uniform density against the euclidean norm
    const LatitudeMeasure uniform(
        SphericalDistributionRS(4, PiecewiseSmoothFn::constant(3.0 / (8.0 * pi))));
    CHECK(forward_residual(uniform, AngleProfile::constant(1.0), 4, ts) <= 1e-8);

    // full density + atom at r = 0.7
    const LatitudeMeasure mu07(barrel::generating_distribution_closed(0.7).distribution);
    CHECK(forward_residual(mu07, AngleProfile::barrel_norm(0.7), 4, ts) <= 1e-6);

    CHECK_THROWS_AS(forward_residual(mu1, AngleProfile::barrel_norm(1.0), 3, ts),
                    std::invalid_argument);
}

TEST_CASE("nnls certification: zonoid and non-zonoid barrels") {
    const auto pos = nnls_certify(AngleProfile::barrel_norm(0.8), 4);
    CHECK(pos.residual_sup <= 1e-4);
    CHECK(pos.positive);
    CHECK(pos.verdict == "zonoid-consistent");

    const auto neg = nnls_certify(AngleProfile::barrel_norm(1.3), 4);
    CHECK(neg.residual_sup >= 1e-3);
    CHECK_FALSE(neg.positive);
    CHECK(neg.verdict == "not-zonoid-consistent");

    const auto ball = nnls_certify(AngleProfile::constant(1.0), 4);
    CHECK(ball.residual_sup <= 1e-6);
    CHECK(ball.positive);

    // recovered coefficients reproduce the uniform density 3/(8 pi) after
    // weight division, read off as windowed masses against the closed form
    for (const auto& [a, b] : std::vector<std::pair<double, double>>{
             {0.15, 0.45}, {0.45, 0.7}, {0.7, 0.9}}) {
        double window_mass = 0.0;
        for (size_t j = 0; j < ball.nodes.size(); ++j)
            if (ball.nodes[j] >= a && ball.nodes[j] < b) window_mass += ball.coefficients[j];
        const double expect = numerics::integrate(
            [](double x) {
                return 3.0 / (8.0 * pi) * 2.0 * distributions::latitude_jacobian(4, x);
            },
            a, b);
        CHECK(window_mass == doctest::Approx(expect).epsilon(0.05));
    }
}

TEST_CASE("nnls certification: recovered masses track the closed measure") {
    // finer grids resolve the atom cluster to 5 percent
    const double r = 0.8;
    const auto report = nnls_certify(AngleProfile::barrel_norm(r), 4, 400, 800);
    const double xr = barrel::breakpoint_x(r);
    const auto& g = barrel::generating_distribution_closed(r);
    const double atom_mass =
        2.0 * g.atom_weight * distributions::latitude_jacobian(4, xr);

    // coefficient mass within two grid cells of x_r
    size_t jc = 0;
    for (size_t j = 1; j < report.nodes.size(); ++j)
        if (std::abs(report.nodes[j] - xr) < std::abs(report.nodes[jc] - xr)) jc = j;
    double cluster = 0.0;
    for (size_t j = (jc >= 2 ? jc - 2 : 0); j <= std::min(jc + 2, report.nodes.size() - 1); ++j)
        cluster += report.coefficients[j];
    CHECK(std::abs(cluster - atom_mass) / atom_mass <= 0.05);

    // total recovered mass matches the closed measure's mass
    double recovered = 0.0;
    for (double c : report.coefficients) recovered += c;
    const LatitudeMeasure mu(g.distribution);
    CHECK(recovered == doctest::Approx(mu.total_mass()).epsilon(1e-3));
}

TEST_CASE("nnls residual grows with r beyond the threshold") {
    double prev = 0.0;
    for (double r : {1.0, 1.1, 1.2, 1.3, 1.4, 1.5}) {
        const double res = nnls_certify(AngleProfile::barrel_norm(r), 4).residual_sup;
        CHECK(res >= prev - 1e-12);
        prev = res;
    }
}

TEST_CASE("grid refinement sanity") {
    const double res08 = nnls_certify(AngleProfile::barrel_norm(0.8), 4).residual_sup;
    const double res08_fine = nnls_certify(AngleProfile::barrel_norm(0.8), 4, 400, 800).residual_sup;
    CHECK(res08_fine <= res08 + 1e-12);

    const double res13 = nnls_certify(AngleProfile::barrel_norm(1.3), 4).residual_sup;
    const double res13_fine = nnls_certify(AngleProfile::barrel_norm(1.3), 4, 400, 800).residual_sup;
    CHECK(res13_fine >= 0.5 * res13);
}

TEST_CASE("threshold sweep") {
    const auto closed = threshold_sweep(0.5, 1.5, 1e-6, SweepMode::ClosedForm);
    CHECK(std::abs(closed.threshold - 1.0) <= 1e-6);
    CHECK(closed.history.size() >= 19);  // log2(1 / 1e-6)

    CHECK_THROWS_AS(threshold_sweep(1.1, 1.5, 1e-3, SweepMode::ClosedForm), BracketError);
    CHECK_THROWS_AS(threshold_sweep(0.5, 1.5, -1.0, SweepMode::ClosedForm),
                    std::invalid_argument);

    const auto numeric = threshold_sweep(0.5, 1.5, 0.02, SweepMode::Nnls);
    CHECK(numeric.threshold >= 0.98);
    CHECK(numeric.threshold <= 1.02);
}

TEST_CASE("facet gauge check") {
    CHECK(facet_gauge_check(BarrelParams(3, 1.0), 100));
    CHECK(facet_gauge_check(BarrelParams(4, 1.0), 100));
    CHECK(facet_gauge_check(BarrelParams(4, 0.3), 50));

    // points beyond the facet radius leave the boundary
    const BarrelParams p(3, 1.0);
    CHECK(profiles::gauge(p, std::array{1.5, 0.0, 1.0}) > 1.0 + 1e-6);
    CHECK_THROWS_AS(facet_gauge_check(p, 0), std::invalid_argument);
}

TEST_CASE("equal modulus directions") {
    const auto dirs = equal_modulus_directions(
        {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
    CHECK(dirs.size() == 8);
    for (const auto& u : dirs) {
        for (double c : u) CHECK(std::abs(c) == doctest::Approx(1.0 / std::sqrt(3.0)));
        double norm = 0.0;
        for (double c : u) norm += c * c;
        CHECK(norm == doctest::Approx(1.0));
    }

    // a skewed basis still gives at most 2^n directions, all equal-modulus
    const auto skew = equal_modulus_directions(
        {{1.0, 0.2, -0.3}, {0.1, 0.9, 0.4}, {-0.2, 0.3, 1.1}});
    CHECK(skew.size() <= 8);
    for (const auto& u : skew) {
        const double m0 = std::abs(u[0] * 1.0 + u[1] * 0.2 + u[2] * -0.3);
        const double m1 = std::abs(u[0] * 0.1 + u[1] * 0.9 + u[2] * 0.4);
        const double m2 = std::abs(u[0] * -0.2 + u[1] * 0.3 + u[2] * 1.1);
        CHECK(m0 == doctest::Approx(m1).epsilon(1e-10));
        CHECK(m1 == doctest::Approx(m2).epsilon(1e-10));
    }

    // R^4 orthonormal basis: all 16 sign vectors
    const auto dirs4 = equal_modulus_directions({{1.0, 0.0, 0.0, 0.0},
                                                 {0.0, 1.0, 0.0, 0.0},
                                                 {0.0, 0.0, 1.0, 0.0},
                                                 {0.0, 0.0, 0.0, 1.0}});
    CHECK(dirs4.size() == 16);

    CHECK_THROWS_AS(
        equal_modulus_directions({{1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}),
        std::invalid_argument);
}

TEST_CASE("direct sum gauge") {
    DirectSumSplitter split{
        [](const std::vector<double>& x) { return std::vector<double>{x[0]}; },
        [](const std::vector<double>& x) { return std::vector<double>{x[1]}; }};
    auto seg = [](const std::vector<double>& x) { return std::abs(x[0]); };
    const auto gauge = direct_sum_gauge(seg, seg, split);

    // square gauge max(|x1|, |x2|)
    CHECK(gauge({0.5, -0.2}) == doctest::Approx(0.5));
    CHECK(gauge({0.1, 0.9}) == doctest::Approx(0.9));
    CHECK(gauge({0.7, 0.0}) == doctest::Approx(0.7));

    // boundary points of the two summands satisfy the parallelogram-type equality
    const std::vector<double> x{1.0, 0.0}, y{0.0, 1.0};
    const std::vector<double> xpy{1.0, 1.0}, xmy{1.0, -1.0};
    const double lhs = gauge({2.0, 0.0}) + gauge({0.0, 2.0});
    const double rhs = 2.0 * (gauge(xpy) + gauge(xmy));
    CHECK(std::abs(lhs - rhs) <= 1e-14);
}
