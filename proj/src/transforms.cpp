#include "zonoid/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zonoid/barrel.hpp"

namespace zonoid::transforms {

namespace {

constexpr double kPi = std::numbers::pi;

using distributions::PiecewiseSmoothFn;
using distributions::SmoothPiece;
using distributions::SphericalDistributionRS;
using profiles::AngleProfile;
using profiles::ProfileKind;

void check_height(double x, const char* who) {
    if (!(x >= -1e-12 && x <= 1.0 + 1e-12))
        throw std::domain_error(std::string(who) + ": height must lie in [0, 1]");
}

numerics::QuadratureSpec with_flags(const numerics::QuadratureSpec& quad, const SmoothPiece& p) {
    numerics::QuadratureSpec spec = quad;
    const bool l = p.left_singularity().singular;
    const bool r = p.right_singularity().singular;
    spec.singularity = l && r ? numerics::EndpointSingularity::InvSqrtBoth
                       : l    ? numerics::EndpointSingularity::InvSqrtLeft
                       : r    ? numerics::EndpointSingularity::InvSqrtRight
                              : numerics::EndpointSingularity::None;
    return spec;
}

}  // namespace

double SphereConstants::omega(int k) {
    if (k < 1) throw std::invalid_argument("SphereConstants::omega: k must be >= 1");
    switch (k) {
        case 1: return omega1;
        case 2: return omega2;
        case 3: return omega3;
        case 4: return omega4;
        default: return 2.0 * std::pow(kPi, 0.5 * k) / std::tgamma(0.5 * k);
    }
}

double radon_forward_rotsym(const PiecewiseSmoothFn& G, int n, double x,
                            const numerics::QuadratureSpec& quad) {
    if (n < 3) throw std::invalid_argument("radon_forward_rotsym: n must be >= 3");
    check_height(x, "radon_forward_rotsym");
    x = std::clamp(x, 0.0, 1.0);
    if (x == 0.0) return G.value(0.0);  // the great subsphere is the equator

    const double coef = 2.0 * SphereConstants::omega(n - 2) / SphereConstants::omega(n - 1);
    std::vector<double> cuts{0.0, x};
    for (double b : G.breakpoints())
        if (b > 1e-14 && b < x - 1e-14) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    double acc = 0.0;
    if (n == 3) {
        // t = x sin(psi) removes the (x^2 - t^2)^{-1/2} endpoint singularity
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double p0 = std::asin(cuts[i] / x);
            const double p1 = std::asin(std::min(1.0, cuts[i + 1] / x));
            acc += numerics::integrate(
                [&](double psi) { return G.value(x * std::sin(psi)); }, p0, p1, quad);
        }
        return coef * acc;
    }
    const double expo = 0.5 * (n - 4);
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        acc += numerics::integrate(
            [&](double t) {
                const double w = expo == 0.0 ? 1.0 : std::pow(x * x - t * t, expo);
                return G.value(t) * w;
            },
            cuts[i], cuts[i + 1], quad);
    return coef * std::pow(x, 3.0 - n) * acc;
}

double radon_forward_rotsym(const AngleProfile& g, int n, double x,
                            const numerics::QuadratureSpec& quad) {
    // package the profile over x = cos(theta), splitting at its branch angle
    numerics::SmoothFn fn{[g](double t) { return g.value_at_cos(std::clamp(t, 0.0, 1.0)); },
                          nullptr, nullptr};
    std::vector<SmoothPiece> pieces;
    const auto bp = g.breakpoint_phi();
    const double tb = bp ? std::cos(*bp) : -1.0;
    if (bp && tb > 1e-12 && tb < 1.0 - 1e-12) {
        pieces.push_back(SmoothPiece(0.0, tb, fn));
        pieces.push_back(SmoothPiece(tb, 1.0, fn));
    } else {
        pieces.push_back(SmoothPiece(0.0, 1.0, fn));
    }
    return radon_forward_rotsym(PiecewiseSmoothFn(std::move(pieces)), n, x, quad);
}

namespace {

// Numeric route of the Radon inverse: G(x) = f(theta) + x f'(theta)/cos(theta)
// at theta = asin(x), with derivatives taken in the angle variable where the
// even/equatorial reflections keep central stencils valid. Near x = 1 the
// quotient is replaced by its Taylor form in s = acos(x); the odd derivatives
// of the reflected profile vanish at the equator.
class NumericPreimage {
public:
    explicit NumericPreimage(const AngleProfile& f)
        : f_(f), h_(std::max(1e-5, f.grid_spacing())) {
        f_half_ = f_.value_folded(kPi / 2);
        d2_half_ = angle_derivative(kPi / 2, 2, std::max(3e-3, 2.0 * h_));
        d4_half_ = angle_derivative(kPi / 2, 4, 0.05);
    }

    double value(double x) const {
        if (x > 1.0 - 5e-6) {
            const double s = std::acos(std::min(x, 1.0));
            return f_half_ - d2_half_ + s * s * (d2_half_ / 3.0 - d4_half_ / 6.0);
        }
        const double theta = std::asin(x);
        const double c = std::cos(theta);
        return f_.value_folded(theta) + x * angle_derivative(theta, 1, h_) / c;
    }

    double value_with_step(double x, double h) const {
        if (x > 1.0 - 5e-6) return value(x);
        const double theta = std::asin(x);
        return f_.value_folded(theta) + x * angle_derivative(theta, 1, h) / std::cos(theta);
    }

    double angle_derivative(double theta, int m, double h) const {
        std::vector<double> nodes(5);
        for (int k = 0; k < 5; ++k) nodes[k] = theta + (k - 2) * h;
        const auto w = numerics::fd_weights(nodes, theta, m);
        double acc = 0.0;
        for (int k = 0; k < 5; ++k) acc += w[k] * f_.value_folded(nodes[k]);
        return acc;
    }

    double step() const { return h_; }

private:
    AngleProfile f_;
    double h_;
    double f_half_, d2_half_, d4_half_;
};

}  // namespace

distributions::PiecewiseSmoothFn radon_invert_n4(const AngleProfile& f) {
    switch (f.kind()) {
        case ProfileKind::BarrelNorm:
            return barrel::radon_preimage_fn(f.param_r());
        case ProfileKind::Constant:
            return PiecewiseSmoothFn::constant(f.constant_value());
        default:
            break;
    }

    auto pre = std::make_shared<NumericPreimage>(f);

    // difference-quotient consistency scan; corners of the profile surface as
    // disagreement between step sizes around the sample nodes
    std::vector<double> probes;
    for (int i = 1; i < 40; ++i) probes.push_back(0.025 * i);
    if (f.kind() == ProfileKind::Sampled)
        for (double phi : f.samples()->nodes())
            for (double off : {-0.7, -0.3, 0.3, 0.7})
                probes.push_back(std::sin(phi) + off * pre->step());
    for (double x : probes) {
        if (!(x > 1e-3 && x < 1.0 - 1e-5)) continue;
        const double g1 = pre->value_with_step(x, pre->step());
        const double g2 = pre->value_with_step(x, 0.5 * pre->step());
        if (std::abs(g1 - g2) > 1e-2 * std::max({1.0, std::abs(g1), std::abs(g2)}))
            throw NonDifferentiableError(
                "radon_invert_n4: difference quotients do not settle", x);
    }

    numerics::SmoothFn fn{
        [pre](double x) { return pre->value(std::clamp(x, 0.0, 1.0)); },
        [pre](double x) {
            return numerics::fd_derivative([&](double u) { return pre->value(u); },
                                           std::clamp(x, 0.0, 1.0), 1, 1e-3, 0.0, 1.0);
        },
        [pre](double x) {
            return numerics::fd_derivative([&](double u) { return pre->value(u); },
                                           std::clamp(x, 0.0, 1.0), 2, 5e-3, 0.0, 1.0);
        }};
    return PiecewiseSmoothFn::single(std::move(fn));
}

double cosine_kernel(double t, double x0, int n) {
    if (n != 3 && n != 4) throw std::invalid_argument("cosine_kernel: n must be 3 or 4");
    if (!(std::abs(t) <= 1.0 + 1e-12) || !(std::abs(x0) <= 1.0 + 1e-12))
        throw std::domain_error("cosine_kernel: arguments must lie in [-1, 1]");
    t = std::clamp(t, -1.0, 1.0);
    x0 = std::clamp(x0, -1.0, 1.0);
    const double a = std::abs(t * x0);
    const double b = std::sqrt(std::max(0.0, (1.0 - t * t) * (1.0 - x0 * x0)));
    if (a >= b) return a;
    if (n == 4) return (a * a + b * b) / (2.0 * b);
    return (2.0 / kPi) * (a * std::asin(a / b) + std::sqrt(b * b - a * a));
}

double cosine_forward(const distributions::LatitudeMeasure& mu, double t,
                      const numerics::QuadratureSpec& quad) {
    if (!(std::abs(t) <= 1.0 + 1e-12))
        throw std::domain_error("cosine_forward: |t| must be <= 1");
    t = std::clamp(t, -1.0, 1.0);
    const int n = mu.dimension();
    const double kink = std::sqrt(std::max(0.0, 1.0 - t * t));  // |a| = b locus

    double acc = 0.0;
    for (const auto& piece : mu.density().pieces()) {
        if (piece.is_exactly_zero()) continue;
        std::vector<SmoothPiece> parts;
        if (kink > piece.lo() + 1e-12 && kink < piece.hi() - 1e-12) {
            parts.push_back(piece.restricted(piece.lo(), kink));
            parts.push_back(piece.restricted(kink, piece.hi()));
        } else {
            parts.push_back(piece);
        }
        for (const auto& p : parts)
            acc += numerics::integrate(
                [&](double x) {
                    return cosine_kernel(t, x, n) * p.value(x) * 2.0 *
                           distributions::latitude_jacobian(n, x);
                },
                p.lo(), p.hi(), with_flags(quad, p));
    }
    for (const auto& atom : mu.atoms()) acc += atom.mass * cosine_kernel(t, atom.x, n);
    return acc;
}

SphericalDistributionRS apply_inversion_operator(const PiecewiseSmoothFn& G) {
    using distributions::add;
    using distributions::derivative_of_distribution;
    using distributions::multiply_smooth;

    const SphericalDistributionRS d0(4, G);
    const SphericalDistributionRS d1 = derivative_of_distribution(d0);
    const SphericalDistributionRS d2 = derivative_of_distribution(d1);

    const numerics::SmoothFn lead{[](double x) { return 1.0 - x * x; },
                                  [](double x) { return -2.0 * x; }, [](double) { return -2.0; }};
    const numerics::SmoothFn drift{[](double x) { return -3.0 * x; },
                                   [](double) { return -3.0; }, [](double) { return 0.0; }};
    const numerics::SmoothFn stretch{[](double) { return 3.0; }, [](double) { return 0.0; },
                                     [](double) { return 0.0; }};

    const auto sum = add(add(multiply_smooth(d2, lead), multiply_smooth(d1, drift)),
                         multiply_smooth(d0, stretch));
    return distributions::scaled(sum, 1.0 / (8.0 * kPi));
}

SphericalDistributionRS generating_distribution_pipeline(const AngleProfile& f, int n) {
    if (n != 4)
        throw std::invalid_argument(
            "generating_distribution_pipeline: the Radon inversion is implemented for n = 4 only");
    return apply_inversion_operator(radon_invert_n4(f));
}

}  // namespace zonoid::transforms
