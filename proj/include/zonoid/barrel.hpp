#pragma once

#include "zonoid/distributions.hpp"

namespace zonoid::barrel {

/// Latitude x_r = r / sqrt(1 + r^2) of the edge circle where the flat facet
/// of the barrel meets its spherical cap; every closed form below switches
/// branch there.
double breakpoint_x(double r);

/** The Radon preimage of the barrel norm in the x = cos(phi) variable: the
    function whose rotationally symmetric spherical Radon transform equals the
    norm profile (n = 4). Continuous on [0,1]; its derivative jumps at x_r. */
double radon_preimage(double r, double x);
double radon_preimage_d1(double r, double x);  // per-branch; throws at x = x_r
double radon_preimage_d2(double r, double x);  // smooth part only, per branch

/// Jump of the preimage derivative at x_r: r (1 + r^2)^2. The corresponding
/// atom of the generating distribution has weight (1 - x_r^2) c(r) / (8 pi)
/// = r (1 + r^2) / (8 pi).
double radon_preimage_jump(double r);

/// The two-branch preimage as a piecewise function with exact derivatives,
/// ready for the distributional inversion operator.
distributions::PiecewiseSmoothFn radon_preimage_fn(double r);

/// Closed-form generating distribution of the barrel: fields of the
/// inversion result, kept alongside the assembled distribution object.
struct BarrelGenerating {
    double r;
    double x_r;
    double atom_weight;  // r (1 + r^2) / (8 pi)
    distributions::SphericalDistributionRS distribution;
};

/** Generating distribution of the n = 4 barrel in closed form: density
    3 (1 - r^2) / (8 pi A^5) on (x_r, 1] with A = sqrt(1 - r^2 + r^2 x^2),
    zero below x_r, plus the atom at x_r. At r = 1 the density is stored as
    the exact zero function, not a numerical residue. */
BarrelGenerating generating_distribution_closed(double r);

/// The polar of the barrel is a zonoid exactly when the closed-form
/// generating distribution is a nonnegative measure, i.e. when r <= 1.
bool is_polar_zonoid(double r);

/** Density of the generating measure of the polar of the n = 3 barrel at
    r = 1, as a function of the polar angle; zero for phi >= pi/4 and with an
    integrable (cos 2 phi)^{-1/2} blow-up as phi -> pi/4 from below. The
    multiplicative constant is left to the caller (see fitted_scale in the
    certify module). Throws at the singular angle itself. */
double polar_generating_density_3d(double phi, double scale);

/// The same density assembled over x = cos(phi) with its singularity flag.
distributions::SphericalDistributionRS polar_generating_distribution_3d(double scale);

}  // namespace zonoid::barrel
