#include "zonoid/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace zonoid::certify {

namespace {

constexpr double kPi = std::numbers::pi;

using profiles::AngleProfile;

AngleProfile profile_for_radius(double r) { return AngleProfile::barrel_norm(r); }

}  // namespace

std::vector<double> chebyshev_latitudes(int count) {
    if (count < 2) throw std::invalid_argument("chebyshev_latitudes: need >= 2 nodes");
    std::vector<double> xs(count);
    for (int j = 0; j < count; ++j)
        xs[j] = 0.5 * (1.0 - std::cos(kPi * j / (count - 1)));
    xs.front() = 0.0;
    xs.back() = 1.0;
    return xs;
}

std::vector<double> uniform_directions(int count) {
    if (count < 2) throw std::invalid_argument("uniform_directions: need >= 2 nodes");
    std::vector<double> ts(count);
    for (int i = 0; i < count; ++i) ts[i] = static_cast<double>(i) / (count - 1);
    return ts;
}

double forward_residual(const distributions::LatitudeMeasure& mu, const AngleProfile& f, int n,
                        std::span<const double> t_grid, const numerics::QuadratureSpec& quad) {
    if (mu.dimension() != n)
        throw std::invalid_argument("forward_residual: measure dimension mismatch");
    double worst = 0.0;
    for (double t : t_grid) {
        const double lhs = transforms::cosine_forward(mu, t, quad);
        const double rhs = f.value_at_cos(std::abs(t));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

CertificateReport nnls_certify(const AngleProfile& f, int n, int latitudes, int directions,
                               CertificateThresholds thresholds) {
    if (n != 4) throw std::invalid_argument("nnls_certify: the kernel system is built for n = 4");

    CertificateReport report;
    report.norm_kind = f.kind() == profiles::ProfileKind::BarrelNorm ? "barrel" : "euclidean";
    report.r = f.kind() == profiles::ProfileKind::BarrelNorm ? f.param_r() : 0.0;
    report.n = n;
    report.latitude_count = latitudes;
    report.direction_count = directions;
    report.thresholds = thresholds;
    report.nodes = chebyshev_latitudes(latitudes);
    const std::vector<double> ts = uniform_directions(directions);

    numerics::NnlsProblem problem;
    problem.matrix.resize(directions, latitudes);
    problem.target.resize(directions);
    for (int i = 0; i < directions; ++i) {
        for (int j = 0; j < latitudes; ++j)
            problem.matrix(i, j) = transforms::cosine_kernel(ts[i], report.nodes[j], n);
        problem.target[i] = f.value_at_cos(ts[i]);
    }
    const auto solution = numerics::nnls_solve(problem);

    report.residual_l2 = solution.residual_norm;
    const Eigen::VectorXd residual = problem.matrix * solution.coefficients - problem.target;
    report.residual_sup = residual.lpNorm<Eigen::Infinity>();
    report.coefficients.assign(solution.coefficients.data(),
                               solution.coefficients.data() + latitudes);

    // cluster contiguous support for the recovered-mass summary
    const double mass_floor = 1e-9 * std::max(1.0, solution.coefficients.maxCoeff());
    for (int j = 0; j < latitudes;) {
        if (report.coefficients[j] <= mass_floor) {
            ++j;
            continue;
        }
        double mass = 0.0, center = 0.0;
        int k = j;
        while (k < latitudes && report.coefficients[k] > mass_floor) {
            mass += report.coefficients[k];
            center += report.coefficients[k] * report.nodes[k];
            ++k;
        }
        report.clusters.push_back({center / mass, mass});
        j = k;
    }

    report.positive = report.residual_sup <= thresholds.accept;
    report.verdict = report.positive ? "zonoid-consistent"
                     : report.residual_sup >= thresholds.reject ? "not-zonoid-consistent"
                                                                : "inconclusive";
    return report;
}

SweepResult threshold_sweep(double r_lo, double r_hi, double tol, SweepMode mode, int latitudes,
                            int directions) {
    if (!(r_lo > 0.0 && r_lo < r_hi)) throw std::invalid_argument("threshold_sweep: bad bracket");
    if (!(tol > 0.0)) throw std::invalid_argument("threshold_sweep: tol must be positive");

    const auto zonoid_at = [&](double r) {
        if (mode == SweepMode::ClosedForm) return barrel::is_polar_zonoid(r);
        return nnls_certify(profile_for_radius(r), 4, latitudes, directions).residual_sup <=
               CertificateThresholds{}.accept;
    };

    bool lo_verdict = zonoid_at(r_lo);
    bool hi_verdict = zonoid_at(r_hi);
    if (lo_verdict == hi_verdict)
        throw BracketError("threshold_sweep: verdicts agree at both bracket endpoints");

    SweepResult result;
    double lo = r_lo, hi = r_hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const bool mid_verdict = zonoid_at(mid);
        result.history.push_back({lo, hi, mid, mid_verdict});
        if (mid_verdict == lo_verdict)
            lo = mid;
        else
            hi = mid;
    }
    result.threshold = 0.5 * (lo + hi);
    return result;
}

bool facet_gauge_check(const profiles::BarrelParams& params, int sample_count, unsigned seed) {
    if (sample_count < 1) throw std::invalid_argument("facet_gauge_check: sample_count >= 1");
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    const int n = params.n;
    bool ok = true;
    for (int s = 0; s < sample_count && ok; ++s) {
        // uniform draw from the horizontal disc of radius r
        std::vector<double> c(n - 1);
        double norm2 = 0.0;
        for (auto& ci : c) {
            ci = gauss(rng);
            norm2 += ci * ci;
        }
        const double radius =
            params.r * std::pow(uni(rng), 1.0 / (n - 1)) / std::sqrt(std::max(norm2, 1e-300));
        for (auto& ci : c) ci *= radius;

        std::vector<double> plus(n, 0.0), minus(n, 0.0), twice(n, 0.0);
        for (int i = 0; i + 1 < n; ++i) {
            plus[i] = c[i];
            minus[i] = -c[i];
        }
        plus[n - 1] = minus[n - 1] = 1.0;
        twice[n - 1] = 2.0;

        const double g_plus = profiles::gauge(params, plus);
        const double g_minus = profiles::gauge(params, minus);
        const double g_twice = profiles::gauge(params, twice);
        ok = ok && std::abs(g_plus - 1.0) <= 1e-12;
        ok = ok && std::abs(g_twice - 2.0) <= 1e-12;
        ok = ok && std::abs(g_plus + g_minus - 2.0) <= 1e-12;
    }
    return ok;
}

std::vector<std::vector<double>> equal_modulus_directions(
    const std::vector<std::vector<double>>& basis) {
    const int n = static_cast<int>(basis.size());
    if (n < 1) throw std::invalid_argument("equal_modulus_directions: empty basis");
    Eigen::MatrixXd X(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(basis[i].size()) != n)
            throw std::invalid_argument("equal_modulus_directions: vectors must have length n");
        for (int j = 0; j < n; ++j) X(i, j) = basis[i][j];
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(X);
    if (!lu.isInvertible())
        throw std::invalid_argument("equal_modulus_directions: basis is singular");

    std::vector<std::vector<double>> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        Eigen::VectorXd s(n);
        for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1u ? 1.0 : -1.0;
        Eigen::VectorXd u = lu.solve(s);
        u.normalize();
        bool dup = false;
        for (const auto& v : out) {
            double dist = 0.0;
            for (int i = 0; i < n; ++i) dist += (v[i] - u[i]) * (v[i] - u[i]);
            if (dist < 1e-18) dup = true;
        }
        if (!dup) out.emplace_back(u.data(), u.data() + n);
    }
    return out;
}

GaugeFunction direct_sum_gauge(GaugeFunction gauge_b, GaugeFunction gauge_c,
                               DirectSumSplitter splitter) {
    return [gauge_b = std::move(gauge_b), gauge_c = std::move(gauge_c),
            splitter = std::move(splitter)](const std::vector<double>& x) {
        return std::max(gauge_b(splitter.first(x)), gauge_c(splitter.second(x)));
    };
}

}  // namespace zonoid::certify
