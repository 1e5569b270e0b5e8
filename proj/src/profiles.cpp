#include "zonoid/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zonoid::profiles {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kDomainSlack = 1e-12;

void check_angle(double phi) {
    if (!(phi >= -kDomainSlack && phi <= kHalfPi + kDomainSlack))
        throw std::domain_error("angle profile: phi outside [0, pi/2]");
}

double clamp_angle(double phi) { return std::clamp(phi, 0.0, kHalfPi); }

double barrel_norm_value(double r, double phi) {
    if (phi <= std::atan(r)) return std::cos(phi);
    const double c = std::cos(phi);
    return 1.0 / (r * std::sin(phi) + std::sqrt(1.0 - r * r * c * c));
}

}  // namespace

AngleProfile AngleProfile::barrel_norm(double r) {
    if (!(r > 0.0)) throw std::domain_error("barrel_norm: r must be positive");
    AngleProfile p;
    p.kind_ = ProfileKind::BarrelNorm;
    p.role_ = ProfileRole::Norm;
    p.r_ = r;
    return p;
}

AngleProfile AngleProfile::support(double offset, double slope) {
    if (offset < 0.0 || slope < 0.0)
        throw std::domain_error("support: coefficients must be nonnegative");
    AngleProfile p;
    p.kind_ = ProfileKind::Support;
    p.role_ = ProfileRole::Support;
    p.c0_ = offset;
    p.c1_ = slope;
    p.r_ = slope;
    return p;
}

AngleProfile AngleProfile::polar_radial(double r) {
    if (!(r > 0.0)) throw std::domain_error("polar_radial: r must be positive");
    AngleProfile p;
    p.kind_ = ProfileKind::PolarRadial;
    p.role_ = ProfileRole::Radial;
    p.r_ = r;
    return p;
}

AngleProfile AngleProfile::constant(double value, ProfileRole role) {
    if (!std::isfinite(value)) throw std::domain_error("constant: value must be finite");
    AngleProfile p;
    p.kind_ = ProfileKind::Constant;
    p.role_ = role;
    p.c0_ = value;
    return p;
}

AngleProfile AngleProfile::sampled(std::vector<double> phis, std::vector<double> values,
                                   ProfileRole role, int order) {
    if (order != 1 && order != 3)
        throw std::invalid_argument("sampled profile: interpolation order must be 1 or 3");
    if (phis.size() < 2 || phis.size() != values.size())
        throw std::invalid_argument("sampled profile: need matching grids of >= 2 nodes");
    if (std::abs(phis.front()) > kDomainSlack || std::abs(phis.back() - kHalfPi) > kDomainSlack)
        throw std::invalid_argument("sampled profile: grid must span [0, pi/2]");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("sampled profile: non-finite value");
    phis.front() = 0.0;
    phis.back() = kHalfPi;
    AngleProfile p;
    p.kind_ = ProfileKind::Sampled;
    p.role_ = role;
    p.order_ = order;
    p.interp_ = std::make_shared<numerics::MonotoneCubic>(std::move(phis), std::move(values));
    return p;
}

double AngleProfile::eval(double phi) const {
    switch (kind_) {
        case ProfileKind::BarrelNorm:
            return barrel_norm_value(r_, phi);
        case ProfileKind::Support:
            return c0_ + c1_ * std::sin(phi);
        case ProfileKind::PolarRadial:
            return 1.0 / (1.0 + r_ * std::sin(phi));
        case ProfileKind::Constant:
            return c0_;
        case ProfileKind::Sampled: {
            if (order_ == 3) return interp_->value(phi);
            const auto& xs = interp_->nodes();
            const auto& ys = interp_->values();
            auto it = std::upper_bound(xs.begin(), xs.end(), phi);
            const size_t i =
                std::clamp<size_t>(static_cast<size_t>(it - xs.begin()), 1, xs.size() - 1) - 1;
            const double t = (phi - xs[i]) / (xs[i + 1] - xs[i]);
            return ys[i] + t * (ys[i + 1] - ys[i]);
        }
    }
    return 0.0;  // unreachable
}

double AngleProfile::value(double phi) const {
    check_angle(phi);
    return eval(clamp_angle(phi));
}

double AngleProfile::value_folded(double phi) const {
    double t = std::fmod(std::abs(phi), std::numbers::pi);
    if (t > kHalfPi) t = std::numbers::pi - t;
    return eval(t);
}

double AngleProfile::value_at_cos(double x) const {
    if (!(x >= -kDomainSlack && x <= 1.0 + kDomainSlack))
        throw std::domain_error("value_at_cos: x outside [0, 1]");
    return eval(std::acos(std::clamp(x, 0.0, 1.0)));
}

double AngleProfile::value_at_sin(double x) const {
    if (!(x >= -kDomainSlack && x <= 1.0 + kDomainSlack))
        throw std::domain_error("value_at_sin: x outside [0, 1]");
    return eval(std::asin(std::clamp(x, 0.0, 1.0)));
}

std::optional<double> AngleProfile::breakpoint_phi() const {
    if (kind_ == ProfileKind::BarrelNorm) return std::atan(r_);
    return std::nullopt;
}

double AngleProfile::grid_spacing() const {
    return kind_ == ProfileKind::Sampled ? interp_->max_spacing() : 0.0;
}

double barrel_norm_profile(const BarrelParams& params, double phi) {
    check_angle(phi);
    return barrel_norm_value(params.r, clamp_angle(phi));
}

double barrel_support_profile(const BarrelParams& params, double phi) {
    check_angle(phi);
    return 1.0 + params.r * std::sin(clamp_angle(phi));
}

double polar_radial_profile(const BarrelParams& params, double phi) {
    check_angle(phi);
    return 1.0 / (1.0 + params.r * std::sin(clamp_angle(phi)));
}

double polar_section_curve(double x) {
    if (!(std::abs(x) <= 1.0 + kDomainSlack))
        throw std::domain_error("polar_section_curve: |x| must be <= 1");
    return (1.0 - x * x) / 2.0;
}

double gauge(const BarrelParams& params, std::span<const double> point) {
    if (static_cast<int>(point.size()) != params.n)
        throw std::invalid_argument("gauge: point dimension must match params.n");
    double horiz2 = 0.0;
    for (size_t i = 0; i + 1 < point.size(); ++i) horiz2 += point[i] * point[i];
    const double axis = point.back();
    const double norm = std::sqrt(horiz2 + axis * axis);
    if (norm == 0.0) return 0.0;
    const double phi = std::atan2(std::sqrt(horiz2), std::abs(axis));
    return norm * barrel_norm_value(params.r, phi);
}

AngleProfile support_sum(const AngleProfile& a, const AngleProfile& b) {
    auto is_support = [](const AngleProfile& p) {
        return p.kind() == ProfileKind::Support ||
               (p.kind() == ProfileKind::Sampled && p.role() == ProfileRole::Support);
    };
    if (!is_support(a) || !is_support(b))
        throw IncompatibleKindError("support_sum: both arguments must be support profiles");

    if (a.kind() == ProfileKind::Support && b.kind() == ProfileKind::Support)
        return AngleProfile::support(a.support_offset() + b.support_offset(),
                                     a.support_slope() + b.support_slope());

    // at least one sampled operand: sum on the merged grid
    std::vector<double> grid;
    for (const AngleProfile* p : {&a, &b})
        if (p->kind() == ProfileKind::Sampled)
            for (double x : p->samples()->nodes()) grid.push_back(x);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double u, double v) { return std::abs(u - v) < 1e-14; }),
               grid.end());
    std::vector<double> sum(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) sum[i] = a.value(grid[i]) + b.value(grid[i]);
    int order = 3;
    if (a.kind() == ProfileKind::Sampled) order = std::min(order, a.interpolation_order());
    if (b.kind() == ProfileKind::Sampled) order = std::min(order, b.interpolation_order());
    return AngleProfile::sampled(std::move(grid), std::move(sum), ProfileRole::Support, order);
}

}  // namespace zonoid::profiles
