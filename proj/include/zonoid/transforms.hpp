#pragma once

#include "zonoid/distributions.hpp"
#include "zonoid/profiles.hpp"

namespace zonoid::transforms {

/// Total surface measures omega_k of the unit sphere in R^k. The convention
/// is pinned by the fixed point of the rotationally symmetric Radon equation:
/// constants transform to constants because 2 omega_{n-2} / omega_{n-1}
/// normalizes the latitude integral to a mean.
struct SphereConstants {
    static constexpr double omega1 = 2.0;
    static constexpr double omega2 = 2.0 * std::numbers::pi;
    static constexpr double omega3 = 4.0 * std::numbers::pi;
    static constexpr double omega4 = 2.0 * std::numbers::pi * std::numbers::pi;
    static double omega(int k);  // general k via the Gamma function
};

class NonDifferentiableError : public std::runtime_error {
public:
    NonDifferentiableError(const std::string& msg, double x)
        : std::runtime_error(msg), x_(x) {}
    double where() const { return x_; }

private:
    double x_;
};

/** Rotationally symmetric spherical Radon transform: the mean of g over the
    great subsphere orthogonal to a direction at height sin(angle) = x,
    evaluated as
      (2 omega_{n-2} / omega_{n-1}) x^{3-n} int_0^x G(t) (x^2-t^2)^{(n-4)/2} dt
    with G(t) = g(cos^{-1} t). At x = 0 it degenerates to g(pi/2). The n = 3
    weak singularity is removed by the substitution t = x sin(psi). */
double radon_forward_rotsym(const profiles::AngleProfile& g, int n, double x,
                            const numerics::QuadratureSpec& quad = {});
double radon_forward_rotsym(const distributions::PiecewiseSmoothFn& G, int n, double x,
                            const numerics::QuadratureSpec& quad = {});

/** Inverse of the n = 4 rotationally symmetric Radon transform:
    G(x) = d/dx (x f(sin^{-1} x)). Closed-form barrel and constant profiles
    invert exactly; other profiles are differentiated numerically in the angle
    variable with 5-point stencils (the x variable is ill-conditioned at the
    equatorial endpoint). Throws NonDifferentiableError with the offending
    abscissa when difference quotients fail to settle. */
distributions::PiecewiseSmoothFn radon_invert_n4(const profiles::AngleProfile& f);

/** Mean of |<u,v>| over v uniform on the latitude sphere {v_n = x0}, for any
    u with u_n = t. With a = t x0 and b = sqrt((1-t^2)(1-x0^2)):
      n = 4:  |a|                       if |a| >= b,
              (a^2 + b^2) / (2b)        otherwise;
      n = 3:  |a|                       if |a| >= b,
              (2/pi) (|a| asin(|a|/b) + sqrt(b^2 - a^2))  otherwise.
    Symmetric in (t, x0) and even in each argument; K(t, 1) = |t|. */
double cosine_kernel(double t, double x0, int n);

/// Cosine transform of the measure at any direction of height t:
/// the kernel integrated against the folded latitude decomposition.
double cosine_forward(const distributions::LatitudeMeasure& mu, double t,
                      const numerics::QuadratureSpec& quad = {});

/** The rotationally symmetric part of (1/(2 omega_3))(Delta_4 + 3) applied in
    the distribution sense:
      (1/(8 pi)) ((1-x^2) G'' - 3 x G' + 3 G),
    with jumps of G' becoming atoms and jumps of G becoming delta derivatives. */
distributions::SphericalDistributionRS apply_inversion_operator(
    const distributions::PiecewiseSmoothFn& G);

/// Full inversion of the cosine transform for a rotationally symmetric norm
/// profile (n = 4 only): the inversion operator composed with the Radon
/// inverse.
distributions::SphericalDistributionRS generating_distribution_pipeline(
    const profiles::AngleProfile& f, int n = 4);

}  // namespace zonoid::transforms
