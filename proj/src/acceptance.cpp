#include "zonoid/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "zonoid/certify.hpp"

namespace zonoid::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;

using distributions::LatitudeMeasure;
using distributions::PiecewiseSmoothFn;
using distributions::SphericalDistributionRS;
using profiles::AngleProfile;
using profiles::BarrelParams;
using profiles::ProfileRole;

CheckResult result(const std::string& name, double measured, double tolerance,
                   const std::string& details) {
    return {name, measured <= tolerance, measured, tolerance, details};
}

// --- branch continuity of the barrel norm at arctan r --------------------

CheckResult check_branch_continuity() {
    double worst = 0.0;
    for (double r = 0.1; r <= 3.0 + 1e-9; r += 0.1) {
        const double a = std::atan(r);
        const double facet = std::cos(a);
        const double cap = 1.0 / (r * std::sin(a) + std::sqrt(1.0 - r * r * std::cos(a) * std::cos(a)));
        worst = std::max(worst, std::abs(facet - cap));
    }
    return result("branch-continuity", worst, 1e-12,
                  "norm branches at arctan r over r = 0.1 .. 3.0");
}

// --- n = 4 Radon roundtrip -------------------------------------------------

CheckResult check_radon_roundtrip() {
    std::vector<std::pair<std::string, AngleProfile>> cases;
    cases.emplace_back("1", AngleProfile::constant(1.0));
    cases.emplace_back("1 + sin(phi)/2", AngleProfile::support(1.0, 0.5));
    {
        std::vector<double> phis, vals;
        const int m = 2000;
        const auto exact = AngleProfile::barrel_norm(0.8);
        for (int i = 0; i <= m; ++i) {
            phis.push_back(i * (kPi / 2) / m);
            vals.push_back(exact.value(phis.back()));
        }
        cases.emplace_back("sampled barrel r=0.8",
                           AngleProfile::sampled(phis, vals, ProfileRole::Norm));
    }

    numerics::QuadratureSpec quad;
    quad.abs_tol = quad.rel_tol = 1e-9;
    double worst = 0.0;
    for (const auto& [label, f] : cases) {
        const auto G = transforms::radon_invert_n4(f);
        for (int i = 0; i <= 110; ++i) {
            const double x = 0.01 + (1.0 - 0.01) * i / 110.0;
            const double got = transforms::radon_forward_rotsym(G, 4, x, quad);
            worst = std::max(worst, std::abs(got - f.value_at_sin(x)));
        }
    }
    return result("radon-roundtrip", worst, 1e-6,
                  "forward o invert on {1, 1 + sin/2, sampled barrel 0.8}, x in [0.01, 1]");
}

// --- euclidean baseline ------------------------------------------------------

CheckResult check_euclidean_baseline() {
    const auto d = transforms::generating_distribution_pipeline(AngleProfile::constant(1.0));
    double worst = 0.0;
    for (int i = 0; i <= 50; ++i)
        worst = std::max(worst,
                         std::abs(d.density().value(i / 50.0) - 3.0 / (8.0 * kPi)));
    for (const auto& a : d.atoms()) worst = std::max(worst, std::abs(a.weight));

    const LatitudeMeasure mu(d);
    numerics::QuadratureSpec quad;
    quad.abs_tol = quad.rel_tol = 1e-10;
    for (int i = 0; i <= 40; ++i)
        worst = std::max(worst, std::abs(transforms::cosine_forward(mu, i / 40.0, quad) - 1.0));
    return result("euclidean-baseline", worst, 1e-8,
                  "pipeline of the constant norm: uniform density 3/(8 pi), T = 1");
}

// --- pipeline vs closed form -------------------------------------------------

CheckResult check_pipeline_vs_closed() {
    double worst_density = 0.0, worst_jump = 0.0, worst_atom = 0.0, worst_annihilation = 0.0;
    for (double r : {0.5, 0.8, 1.0, 1.3}) {
        const auto closed = barrel::generating_distribution_closed(r);
        const auto piped = transforms::generating_distribution_pipeline(
            AngleProfile::barrel_norm(r));

        if (r != 1.0)
            for (double x = closed.x_r + 0.01; x < 1.0; x += 0.01) {
                const double diff = std::abs(piped.density().value(x) -
                                             closed.distribution.density().value(x));
                worst_density = std::max(worst_density, diff / 1.0);
            }

        // measured jump of the preimage derivative vs c(r)
        const double xr = closed.x_r;
        const double measured_jump =
            numerics::one_sided_limit(
                [&](double x) { return barrel::radon_preimage_d1(r, x); }, xr,
                numerics::Side::Right)
                .value -
            numerics::one_sided_limit(
                [&](double x) { return barrel::radon_preimage_d1(r, x); }, xr,
                numerics::Side::Left)
                .value;
        worst_jump = std::max(worst_jump,
                              std::abs(measured_jump - barrel::radon_preimage_jump(r)));

        worst_atom = std::max(worst_atom,
                              std::abs(piped.atoms().at(0).weight - closed.atom_weight));

        for (double x = 0.01; x <= xr - 0.01; x += 0.01)
            worst_annihilation = std::max(worst_annihilation,
                                          std::abs(piped.density().value(x)));
    }
    std::ostringstream detail;
    detail << "density " << worst_density << " (<=1e-6), jump " << worst_jump
           << " (<=1e-9), atom " << worst_atom << " (<=1e-8), inner branch "
           << worst_annihilation << " (<=1e-9)";
    CheckResult r;
    r.name = "pipeline-vs-closed-form";
    r.pass = worst_density <= 1e-6 && worst_jump <= 1e-9 && worst_atom <= 1e-8 &&
             worst_annihilation <= 1e-9;
    r.measured = std::max({worst_density, worst_jump, worst_atom, worst_annihilation});
    r.tolerance = 1e-6;
    r.details = detail.str();
    return r;
}

// --- closed-form latitude atom identity ---------------------------------------

CheckResult check_latitude_atom_identity() {
    const auto g = barrel::generating_distribution_closed(1.0);
    const LatitudeMeasure mu(g.distribution);
    const auto f = AngleProfile::barrel_norm(1.0);
    const double xr = 1.0 / std::sqrt(2.0);

    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = static_cast<double>(i) / 999.0;
        worst = std::max(worst, std::abs(transforms::cosine_forward(mu, t) - f.value_at_cos(t)));
    }

    // reconciliation with the unnormalized latitude integral over points of
    // norm sqrt(2): omega_3 sqrt(2) K(t, x_r) = {2 pi 2|t|, 2 pi / sqrt(1-t^2)}
    double worst_ledger = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double t = i / 400.0 * 0.999;
        const double lhs = 4.0 * kPi * std::sqrt(2.0) * transforms::cosine_kernel(t, xr, 4);
        const double rhs = std::abs(t) >= xr ? 2.0 * kPi * 2.0 * std::abs(t)
                                             : 2.0 * kPi / std::sqrt(1.0 - t * t);
        worst_ledger = std::max(worst_ledger, std::abs(lhs - rhs));
    }
    std::ostringstream detail;
    detail << "atom measure at r=1 reproduces the norm over 1000 heights; normalization "
              "table err "
           << worst_ledger;
    CheckResult r = result("latitude-atom-identity", worst, 1e-10, detail.str());
    r.pass = r.pass && worst_ledger <= 1e-9;
    return r;
}

// --- zonoid threshold ----------------------------------------------------------

CheckResult check_zonoid_threshold() {
    bool grid_ok = true;
    for (int i = 2; i <= 40; ++i) {
        const double r = i / 20.0;  // exact at the r = 1 boundary
        grid_ok = grid_ok && (barrel::is_polar_zonoid(r) == (r <= 1.0));
    }

    const auto closed = certify::threshold_sweep(0.5, 1.5, 1e-6, certify::SweepMode::ClosedForm);
    const double closed_err = std::abs(closed.threshold - 1.0);

    const auto numeric = certify::threshold_sweep(0.5, 1.5, 0.02, certify::SweepMode::Nnls);
    const bool numeric_ok = numeric.threshold >= 0.98 && numeric.threshold <= 1.02;

    double worst_zonoid_residual = 0.0;
    for (double r : {0.5, 0.8, 1.0})
        worst_zonoid_residual = std::max(
            worst_zonoid_residual,
            certify::nnls_certify(AngleProfile::barrel_norm(r), 4).residual_sup);
    const double reject_residual =
        certify::nnls_certify(AngleProfile::barrel_norm(1.3), 4).residual_sup;

    const certify::CertificateThresholds thresholds;
    const bool pass = grid_ok && closed_err <= 1e-6 + 1e-12 && numeric_ok &&
                      worst_zonoid_residual <= thresholds.accept &&
                      reject_residual >= 10.0 * thresholds.accept;
    std::ostringstream detail;
    detail << "grid verdicts " << (grid_ok ? "ok" : "WRONG") << ", closed sweep r* err "
           << closed_err << ", nnls sweep r* = " << numeric.threshold << ", residuals max(r<=1) "
           << worst_zonoid_residual << " vs r=1.3 " << reject_residual;
    CheckResult r = result("zonoid-threshold", closed_err, 1e-6, detail.str());
    r.pass = pass;
    return r;
}

// --- n=3 polar generating density ---------------------------------------------

CheckResult check_polar_density_3d() {
    numerics::QuadratureSpec quad;
    quad.abs_tol = quad.rel_tol = 1e-9;

    // fit the free constant at the equator direction t = 0
    const auto unscaled = barrel::polar_generating_distribution_3d(1.0);
    const LatitudeMeasure mu_unscaled{unscaled};
    const double f_equator = AngleProfile::barrel_norm(1.0).value(kPi / 2);
    const double scale = f_equator / transforms::cosine_forward(mu_unscaled, 0.0, quad);

    const auto fitted = barrel::polar_generating_distribution_3d(scale);
    const LatitudeMeasure mu{fitted};
    const auto f = AngleProfile::barrel_norm(1.0);
    double worst = 0.0;
    for (int i = 0; i <= 60; ++i) {
        const double phi = i / 60.0 * (kPi / 2);
        const double diff =
            std::abs(transforms::cosine_forward(mu, std::cos(phi), quad) - f.value(phi));
        worst = std::max(worst, diff);
    }

    // L1 but not L2: the mass is finite while partial square integrals keep
    // growing logarithmically toward the singular latitude
    const double lo = 1.0 / std::sqrt(2.0);
    const auto dens = [&](double x) { return fitted.density().value(x); };
    const double mass_full = mu.total_mass(quad);
    numerics::QuadratureSpec plain;
    plain.abs_tol = plain.rel_tol = 1e-9;
    auto partial_l1 = [&](double eps) {
        return numerics::integrate(dens, lo + eps, 1.0, plain);
    };
    auto partial_l2 = [&](double eps) {
        return numerics::integrate([&](double x) { return dens(x) * dens(x); }, lo + eps, 1.0,
                                   plain);
    };
    const bool l1_ok = std::isfinite(mass_full) &&
                       std::abs(partial_l1(1e-8) - partial_l1(1e-6)) < 1e-3;
    const double growth = partial_l2(1e-6) / partial_l2(1e-2);
    const bool l2_diverges = growth > 3.0;  // log-divergence growth threshold

    std::ostringstream detail;
    detail << "fitted scale " << scale << ", forward match " << worst
           << " (<=1e-4), L2 partial growth x" << growth;
    CheckResult r = result("polar-density-n3", worst, 1e-4, detail.str());
    r.pass = r.pass && l1_ok && l2_diverges;
    r.details = detail.str();
    return r;
}

// --- direct sums, facets, equal-modulus directions ------------------------------

CheckResult check_face_structure(unsigned seed) {
    double worst_eq = 0.0;
    {
        // orthogonal direct sum of two segments: the square gauge
        certify::DirectSumSplitter split{
            [](const std::vector<double>& x) { return std::vector<double>{x[0]}; },
            [](const std::vector<double>& x) { return std::vector<double>{x[1]}; }};
        auto seg = [](const std::vector<double>& x) { return std::abs(x[0]); };
        const auto gauge = certify::direct_sum_gauge(seg, seg, split);

        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int k = 0; k < 200; ++k) {
            // unit x in B, unit y in C
            const double sx = uni(rng) > 0 ? 1.0 : -1.0;
            const double sy = uni(rng) > 0 ? 1.0 : -1.0;
            const std::vector<double> xy{sx, sy}, xmy{sx, -sy};
            const std::vector<double> sum{xy[0] + xmy[0], xy[1] + xmy[1]};
            const std::vector<double> diff{xy[0] - xmy[0], xy[1] - xmy[1]};
            const double lhs = gauge(sum) + gauge(diff);
            const double rhs = 2.0 * (gauge(xy) + gauge(xmy));
            worst_eq = std::max(worst_eq, std::abs(lhs - rhs));
        }
        // points in one summand only: gauge reduces to that summand's gauge
        worst_eq = std::max(worst_eq, std::abs(gauge({0.7, 0.0}) - 0.7));
    }

    const bool facets_ok = certify::facet_gauge_check(BarrelParams(3, 1.0), 100, seed) &&
                           certify::facet_gauge_check(BarrelParams(4, 1.0), 100, seed) &&
                           certify::facet_gauge_check(BarrelParams(3, 0.4), 100, seed) &&
                           certify::facet_gauge_check(BarrelParams(4, 2.0), 100, seed);

    // orthonormal basis of R^3: exactly the 8 sign vectors
    const auto dirs = certify::equal_modulus_directions(
        {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
    bool dirs_ok = dirs.size() == 8;
    for (const auto& u : dirs)
        for (double c : u) dirs_ok = dirs_ok && std::abs(std::abs(c) - 1.0 / std::sqrt(3.0)) < 1e-12;

    std::mt19937 rng(seed + 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 100 && dirs_ok; ++trial) {
        const int n = trial % 2 == 0 ? 3 : 4;
        std::vector<std::vector<double>> basis(n, std::vector<double>(n));
        for (auto& row : basis)
            for (auto& v : row) v = gauss(rng);
        try {
            dirs_ok = dirs_ok &&
                      certify::equal_modulus_directions(basis).size() <= (1u << n);
        } catch (const std::invalid_argument&) {
            // a singular draw carries no direction count to check
        }
    }

    std::ostringstream detail;
    detail << "direct-sum equality err " << worst_eq << " (<=1e-14), facet checks "
           << (facets_ok ? "ok" : "FAIL") << ", direction counts "
           << (dirs_ok ? "ok" : "FAIL");
    CheckResult r = result("face-structure", worst_eq, 1e-14, detail.str());
    r.pass = r.pass && facets_ok && dirs_ok;
    return r;
}

// --- cross-route uniqueness -------------------------------------------------------

CheckResult check_cross_route_agreement() {
    const double r = 0.8;
    const auto closed = barrel::generating_distribution_closed(r).distribution;
    const auto piped = transforms::generating_distribution_pipeline(AngleProfile::barrel_norm(r));
    const LatitudeMeasure mu_closed(closed);
    const LatitudeMeasure mu_piped(piped);
    const auto cert = certify::nnls_certify(AngleProfile::barrel_norm(r), 4);

    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        std::vector<double> coeffs(k + 1, 0.0);
        coeffs[k] = 1.0;  // monomial x^k
        const auto psi = numerics::SmoothFn::from_polynomial(numerics::Polynomial(coeffs));
        const double a = mu_closed.integrate_against(psi);
        const double b = mu_piped.integrate_against(psi);
        double c = 0.0;
        for (size_t j = 0; j < cert.nodes.size(); ++j)
            c += cert.coefficients[j] * std::pow(cert.nodes[j], k);
        worst = std::max({worst, std::abs(a - b), std::abs(a - c), std::abs(b - c)});
    }
    return result("cross-route-agreement", worst, 1e-5,
                  "closed vs pipeline vs nnls moments, monomials up to degree 9 at r = 0.8");
}

using CheckFn = std::function<CheckResult(unsigned)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> checks = {
        {"branch-continuity", [](unsigned) { return check_branch_continuity(); }},
        {"radon-roundtrip", [](unsigned) { return check_radon_roundtrip(); }},
        {"euclidean-baseline", [](unsigned) { return check_euclidean_baseline(); }},
        {"pipeline-vs-closed-form", [](unsigned) { return check_pipeline_vs_closed(); }},
        {"latitude-atom-identity", [](unsigned) { return check_latitude_atom_identity(); }},
        {"zonoid-threshold", [](unsigned) { return check_zonoid_threshold(); }},
        {"polar-density-n3", [](unsigned) { return check_polar_density_3d(); }},
        {"face-structure", check_face_structure},
        {"cross-route-agreement", [](unsigned) { return check_cross_route_agreement(); }},
    };
    return checks;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

std::vector<CheckResult> run_suite(const std::string& name, unsigned seed) {
    std::vector<CheckResult> results;
    for (const auto& [check_name, fn] : registry())
        if (name == "all" || name == check_name) results.push_back(fn(seed));
    if (results.empty()) throw std::invalid_argument("unknown suite: " + name);
    return results;
}

std::string format_line(const CheckResult& r, int index, int total) {
    std::ostringstream out;
    out << '[' << index << '/' << total << "] " << (r.pass ? "PASS" : "FAIL") << ' ' << r.name
        << "  (measured " << r.measured << " vs tolerance " << r.tolerance << "; " << r.details
        << ')';
    return out.str();
}

}  // namespace zonoid::acceptance
