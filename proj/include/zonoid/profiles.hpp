#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "zonoid/numerics.hpp"

namespace zonoid::profiles {

/// Dimension n and summand radius r of the body B2^n + r B2^{n-1}.
struct BarrelParams {
    int n;
    double r;

    BarrelParams(int n_, double r_) : n(n_), r(r_) {
        if (n < 3) throw std::invalid_argument("BarrelParams: n must be >= 3");
        if (!(r > 0.0)) throw std::invalid_argument("BarrelParams: r must be positive");
    }
};

enum class ProfileKind { BarrelNorm, Support, PolarRadial, Constant, Sampled };
enum class ProfileRole { Norm, Support, Radial, Generic };

class IncompatibleKindError : public std::invalid_argument {
public:
    explicit IncompatibleKindError(const std::string& msg) : std::invalid_argument(msg) {}
};

/** An even scalar profile on the polar angle phi in [0, pi/2]: the restriction
    of a norm, support, or radial function of a rotationally symmetric body to
    the sphere. Profiles extend to all angles by the reflections
    phi -> -phi and phi -> pi - phi; value() enforces the primary interval,
    value_folded() applies the reflections. */
class AngleProfile {
public:
    // closed-form families
    static AngleProfile barrel_norm(double r);
    static AngleProfile support(double offset, double slope);  // offset + slope*sin(phi)
    static AngleProfile barrel_support(double r) { return support(1.0, r); }
    static AngleProfile polar_radial(double r);
    static AngleProfile constant(double value, ProfileRole role = ProfileRole::Norm);
    static AngleProfile sampled(std::vector<double> phis, std::vector<double> values,
                                ProfileRole role, int order = 3);

    double value(double phi) const;         // domain error outside [0, pi/2]
    double value_folded(double phi) const;  // even/equatorial reflection, total
    double value_at_cos(double x) const;    // f(cos^{-1} x), x in [0,1]
    double value_at_sin(double x) const;    // f(sin^{-1} x), x in [0,1]

    ProfileKind kind() const { return kind_; }
    ProfileRole role() const { return role_; }
    double param_r() const { return r_; }
    double support_offset() const { return c0_; }
    double support_slope() const { return c1_; }
    double constant_value() const { return c0_; }
    int interpolation_order() const { return order_; }
    /// interior angle where the closed form switches branch (barrel norm only)
    std::optional<double> breakpoint_phi() const;
    /// largest node spacing of a sampled profile, 0 for closed forms
    double grid_spacing() const;
    const numerics::MonotoneCubic* samples() const { return interp_.get(); }

private:
    AngleProfile() = default;
    double eval(double phi) const;

    ProfileKind kind_ = ProfileKind::Constant;
    ProfileRole role_ = ProfileRole::Generic;
    double r_ = 0.0;
    double c0_ = 0.0, c1_ = 0.0;
    int order_ = 3;
    std::shared_ptr<const numerics::MonotoneCubic> interp_;
};

// Closed-form geometry of the barrel body, all on phi in [0, pi/2].
double barrel_norm_profile(const BarrelParams& params, double phi);
double barrel_support_profile(const BarrelParams& params, double phi);
double polar_radial_profile(const BarrelParams& params, double phi);

/// Meridian boundary curve |y| = (1-x^2)/2 of the polar body for n=3, r=1.
double polar_section_curve(double x);

/// Minkowski gauge of the barrel at an arbitrary point of R^n; the origin
/// maps to 0 and gauge <= 1 exactly on the body.
double gauge(const BarrelParams& params, std::span<const double> point);

/// Pointwise sum of two support profiles (support functions add under
/// Minkowski sums). Closed-form supports stay closed-form; sampled inputs
/// produce a sampled sum on the merged grid.
AngleProfile support_sum(const AngleProfile& a, const AngleProfile& b);

}  // namespace zonoid::profiles
