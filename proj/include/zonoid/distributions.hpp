#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zonoid/numerics.hpp"

namespace zonoid::distributions {

class DistributionError : public std::runtime_error {
public:
    explicit DistributionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Closed-form tags let sign and serialization questions be answered exactly
/// instead of by sampling; Closure pieces are generic evaluator bundles.
enum class PieceKind {
    Zero,
    Constant,
    BarrelGenerating,  // 3(1-r^2) / (8 pi A^5), A = sqrt(1-r^2+r^2 x^2)
    PolarGenerating3,  // the n=3 polar generating density in x = cos(phi)
    Closure,
    Sampled
};

/// Integrable endpoint singularity marker; exponent > -1. Only the -1/2
/// class receives a dedicated quadrature substitution.
struct SingularityFlag {
    bool singular = false;
    double exponent = 0.0;
};

/** One smooth piece of a piecewise function on [lo, hi] in the x = cos(phi)
    variable: value and two derivatives, a kind tag with parameters for the
    closed forms, one-sided limit values at the ends, and singularity flags. */
class SmoothPiece {
public:
    SmoothPiece(double lo, double hi, numerics::SmoothFn fn,
                PieceKind kind = PieceKind::Closure,
                std::map<std::string, double> params = {},
                SingularityFlag left_sing = {}, SingularityFlag right_sing = {});

    static SmoothPiece zero(double lo, double hi);
    static SmoothPiece constant(double lo, double hi, double value);
    static SmoothPiece sampled(double lo, double hi, std::vector<double> xs,
                               std::vector<double> ys);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double value(double x) const { return fn_.value(x); }
    double deriv1(double x) const { return fn_.deriv1(x); }
    double deriv2(double x) const { return fn_.deriv2(x); }
    const numerics::SmoothFn& fn() const { return fn_; }

    /// one-sided limits at the interval ends; +-inf when flagged singular
    double limit_lo() const { return limit_lo_; }
    double limit_hi() const { return limit_hi_; }

    PieceKind kind() const { return kind_; }
    const std::map<std::string, double>& params() const { return params_; }
    const SingularityFlag& left_singularity() const { return left_sing_; }
    const SingularityFlag& right_singularity() const { return right_sing_; }
    const std::vector<double>* sample_nodes() const;
    const std::vector<double>* sample_values() const;

    SmoothPiece restricted(double lo, double hi) const;  // sub-interval view
    SmoothPiece derivative() const;  // classical derivative on the open piece
    SmoothPiece times(const numerics::SmoothFn& a) const;
    SmoothPiece plus(const SmoothPiece& other) const;  // on the common interval
    SmoothPiece scaled(double factor) const;

    /// exact nonnegativity where the tag answers it; grid sampling otherwise
    bool nonnegative() const;
    bool is_exactly_zero() const { return kind_ == PieceKind::Zero; }

private:
    void compute_limits();

    double lo_, hi_;
    numerics::SmoothFn fn_;
    PieceKind kind_;
    std::map<std::string, double> params_;
    SingularityFlag left_sing_, right_sing_;
    double limit_lo_ = 0.0, limit_hi_ = 0.0;
    std::shared_ptr<const numerics::MonotoneCubic> interp_;

    friend class PiecewiseSmoothFn;
};

/** Piecewise-smooth function on [0,1] with breakpoints
    0 = b_0 < b_1 < ... < b_k = 1 and one smooth piece per interval.
    One-sided limits exist at every interior breakpoint (finite, or infinite
    only when flagged as an integrable endpoint singularity). */
class PiecewiseSmoothFn {
public:
    PiecewiseSmoothFn();  // the zero function
    explicit PiecewiseSmoothFn(std::vector<SmoothPiece> pieces);

    static PiecewiseSmoothFn zero();
    static PiecewiseSmoothFn constant(double value);
    static PiecewiseSmoothFn single(numerics::SmoothFn fn);  // one Closure piece

    const std::vector<SmoothPiece>& pieces() const { return pieces_; }
    std::vector<double> breakpoints() const;

    double value(double x) const;  // right-continuous at interior breakpoints
    double deriv1(double x) const;
    double deriv2(double x) const;

    /// jump f(b+) - f(b-) at interior breakpoint index i (between piece i and i+1)
    double jump_at(size_t i) const;

    PiecewiseSmoothFn plus(const PiecewiseSmoothFn& other) const;
    PiecewiseSmoothFn times(const numerics::SmoothFn& a) const;
    PiecewiseSmoothFn scaled(double factor) const;

    bool nonnegative() const;
    bool is_exactly_zero() const;

private:
    size_t piece_index(double x) const;
    std::vector<SmoothPiece> pieces_;
};

struct Atom {
    double x;
    double weight;
};

struct DeltaDerivative {
    double x;
    double weight;
    int order;  // >= 1
};

/** Per-piece classical derivative plus one atom for every interior jump.
    Throws DistributionError when a one-sided limit at an interior breakpoint
    is infinite (the derivative would not be a distribution of order <= 2 in
    this calculus). */
std::pair<PiecewiseSmoothFn, std::vector<Atom>> distributional_derivative(
    const PiecewiseSmoothFn& f);

/** Rotationally symmetric distribution on S^{n-1} in the folded variable
    x = |cos phi| in [0,1]: a piecewise density (with respect to the spherical
    Lebesgue measure, parameterized by latitude), Dirac atoms, and derivatives
    of Dirac atoms. Values are immutable after construction. */
class SphericalDistributionRS {
public:
    SphericalDistributionRS(int n, PiecewiseSmoothFn density, std::vector<Atom> atoms = {},
                            std::vector<DeltaDerivative> delta_derivatives = {});

    int dimension() const { return n_; }
    const PiecewiseSmoothFn& density() const { return density_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<DeltaDerivative>& delta_derivatives() const { return deltas_; }

    /// true iff there are no delta-derivative terms, the density is
    /// nonnegative on every piece and all atom weights are nonnegative
    bool is_measure() const;

private:
    int n_;
    PiecewiseSmoothFn density_;
    std::vector<Atom> atoms_;
    std::vector<DeltaDerivative> deltas_;
};

SphericalDistributionRS derivative_of_distribution(const SphericalDistributionRS& d);
SphericalDistributionRS multiply_smooth(const SphericalDistributionRS& d,
                                        const numerics::SmoothFn& a);
SphericalDistributionRS add(const SphericalDistributionRS& a, const SphericalDistributionRS& b);
SphericalDistributionRS scaled(const SphericalDistributionRS& d, double factor);

/** Pairing of the distribution with a smooth test function of x:
    integral of density * psi plus sum w psi(x0) plus
    sum (-1)^order w psi^(order)(x0). This is the plain x-calculus pairing;
    the latitude Jacobian enters only through LatitudeMeasure. */
double pair_with_test_function(const SphericalDistributionRS& d, const numerics::SmoothFn& psi,
                               const numerics::QuadratureSpec& quad = {});

/// Surface measure of the latitude band per unit x on S^{n-1}:
/// J_3 = 2 pi, J_4 = 4 pi sqrt(1-x^2).
double latitude_jacobian(int n, double x);

class NotAMeasureError : public std::runtime_error {
public:
    explicit NotAMeasureError(const std::string& msg) : std::runtime_error(msg) {}
};

struct MassAtom {
    double x;
    double mass;  // total spherical mass of the latitude pair {+-x}
};

/** A nonnegative SphericalDistributionRS realized as a measure on the sphere.
    Atoms carry spherical mass directly: converting an x-calculus atom of
    weight w at x0 < 1 gives mass 2 w J_n(x0) (both hemispheres; the factor
    degenerates to 1 at the equator x0 = 0). Pole masses, which the x-calculus
    cannot express because J_n(1) = 0, are added explicitly. */
class LatitudeMeasure {
public:
    explicit LatitudeMeasure(const SphericalDistributionRS& d);
    static LatitudeMeasure point_mass(int n, double x0, double mass);

    void add_point_mass(double x0, double mass);

    int dimension() const { return n_; }
    const PiecewiseSmoothFn& density() const { return density_; }
    const std::vector<MassAtom>& atoms() const { return atoms_; }

    double total_mass(const numerics::QuadratureSpec& quad = {}) const;
    /// integral of psi(x) against the measure on the whole sphere
    double integrate_against(const numerics::SmoothFn& psi,
                             const numerics::QuadratureSpec& quad = {}) const;

private:
    LatitudeMeasure(int n, PiecewiseSmoothFn density);
    int n_;
    PiecewiseSmoothFn density_;
    std::vector<MassAtom> atoms_;
};

}  // namespace zonoid::distributions
