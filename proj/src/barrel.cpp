#include "zonoid/barrel.hpp"

#include <cmath>
#include <numbers>

namespace zonoid::barrel {

namespace {

constexpr double kPi = std::numbers::pi;

void check_r(double r) {
    if (!(r > 0.0)) throw std::domain_error("barrel: r must be positive");
}

// A(x, r) = sqrt(1 - r^2 + r^2 x^2), positive on [x_r, 1] for every r > 0
double radical(double r, double x) { return std::sqrt(1.0 - r * r + r * r * x * x); }

double inner_value(double x) { return (1.0 - 2.0 * x * x) / std::sqrt(1.0 - x * x); }

double outer_value(double r, double x) {
    const double A = radical(r, x);
    return (1.0 - r * r) / (A * (r * x + A) * (r * x + A));
}

double inner_d1(double x) {
    return (2.0 * x * x * x - 3.0 * x) / std::pow(1.0 - x * x, 1.5);
}

double outer_d1(double r, double x) {
    const double A = radical(r, x);
    return r * (2.0 * A + r * x) * (r * x - A) / (A * A * A * (A + r * x));
}

// the first-branch second derivative is -3 (1-x^2)^{-5/2}; the sign is pinned
// by the finite-difference oracle and by D annihilating the inner branch
double inner_d2(double x) { return -3.0 / std::pow(1.0 - x * x, 2.5); }

double outer_d2(double r, double x) {
    const double A = radical(r, x);
    return 3.0 * r * r * (1.0 - r * r) / std::pow(A, 5.0);
}

}  // namespace

double breakpoint_x(double r) {
    check_r(r);
    return r / std::sqrt(1.0 + r * r);
}

double radon_preimage(double r, double x) {
    check_r(r);
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("radon_preimage: x outside [0,1]");
    return x <= breakpoint_x(r) ? inner_value(x) : outer_value(r, x);
}

double radon_preimage_d1(double r, double x) {
    check_r(r);
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("radon_preimage_d1: x outside [0,1]");
    const double xr = breakpoint_x(r);
    if (x == xr)
        throw std::domain_error("radon_preimage_d1: one-sided branches only at x_r");
    return x < xr ? inner_d1(x) : outer_d1(r, x);
}

double radon_preimage_d2(double r, double x) {
    check_r(r);
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("radon_preimage_d2: x outside [0,1]");
    const double xr = breakpoint_x(r);
    if (x == xr)
        throw std::domain_error("radon_preimage_d2: one-sided branches only at x_r");
    return x < xr ? inner_d2(x) : outer_d2(r, x);
}

double radon_preimage_jump(double r) {
    check_r(r);
    return r * (r * r + 1.0) * (r * r + 1.0);
}

distributions::PiecewiseSmoothFn radon_preimage_fn(double r) {
    check_r(r);
    const double xr = breakpoint_x(r);
    using distributions::PieceKind;
    using distributions::SmoothPiece;
    numerics::SmoothFn inner{[](double x) { return inner_value(x); },
                             [](double x) { return inner_d1(x); },
                             [](double x) { return inner_d2(x); }};
    numerics::SmoothFn outer{[r](double x) { return outer_value(r, x); },
                             [r](double x) { return outer_d1(r, x); },
                             [r](double x) { return outer_d2(r, x); }};
    return distributions::PiecewiseSmoothFn(
        {SmoothPiece(0.0, xr, std::move(inner)),
         SmoothPiece(xr, 1.0, std::move(outer))});
}

BarrelGenerating generating_distribution_closed(double r) {
    check_r(r);
    using distributions::PieceKind;
    using distributions::SmoothPiece;
    using distributions::SphericalDistributionRS;

    const double xr = breakpoint_x(r);
    const double atom_weight = r * (r * r + 1.0) / (8.0 * kPi);

    SmoothPiece head = SmoothPiece::zero(0.0, xr);
    SmoothPiece tail = [&]() {
        if (r == 1.0) return SmoothPiece::zero(xr, 1.0);  // exact zero, no residue
        numerics::SmoothFn fn{
            [r](double x) { return 3.0 * (1.0 - r * r) / (8.0 * kPi * std::pow(radical(r, x), 5.0)); },
            [r](double x) {
                const double A = radical(r, x);
                return -15.0 * r * r * x * (1.0 - r * r) / (8.0 * kPi * std::pow(A, 7.0));
            },
            nullptr};
        return SmoothPiece(xr, 1.0, std::move(fn), PieceKind::BarrelGenerating, {{"r", r}});
    }();

    SphericalDistributionRS dist(4, distributions::PiecewiseSmoothFn({head, tail}),
                                 {{xr, atom_weight}});
    return BarrelGenerating{r, xr, atom_weight, std::move(dist)};
}

bool is_polar_zonoid(double r) {
    return generating_distribution_closed(r).distribution.is_measure();
}

double polar_generating_density_3d(double phi, double scale) {
    if (!(scale > 0.0)) throw std::domain_error("polar_generating_density_3d: scale must be positive");
    if (!(phi >= 0.0 && phi <= kPi / 2.0))
        throw std::domain_error("polar_generating_density_3d: phi outside [0, pi/2]");
    if (phi > kPi / 4.0) return 0.0;
    const double co = std::cos(2.0 * phi);
    if (!(co > 1e-14))  // phi == pi/4 up to rounding
        throw std::domain_error("polar_generating_density_3d: singular at phi = pi/4");
    const double s = std::sqrt(co);
    const double c = std::cos(phi);
    return scale * (c * c + s) / ((1.0 + s) * (1.0 + s) * c * c * c * s);
}

distributions::SphericalDistributionRS polar_generating_distribution_3d(double scale) {
    if (!(scale > 0.0))
        throw std::domain_error("polar_generating_distribution_3d: scale must be positive");
    using distributions::PieceKind;
    using distributions::SingularityFlag;
    using distributions::SmoothPiece;
    const double xq = 1.0 / std::sqrt(2.0);  // x = cos(pi/4)

    // density over x = cos(phi): cos(2 phi) = 2 x^2 - 1
    numerics::SmoothFn fn{[scale](double x) {
                              const double s = std::sqrt(2.0 * x * x - 1.0);
                              return scale * (x * x + s) /
                                     ((1.0 + s) * (1.0 + s) * x * x * x * s);
                          },
                          nullptr, nullptr};
    SmoothPiece tail(xq, 1.0, std::move(fn), PieceKind::PolarGenerating3, {{"scale", scale}},
                     SingularityFlag{true, -0.5}, SingularityFlag{});
    return distributions::SphericalDistributionRS(
        3, distributions::PiecewiseSmoothFn({SmoothPiece::zero(0.0, xq), tail}));
}

}  // namespace zonoid::barrel
