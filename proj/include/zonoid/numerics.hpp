#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace zonoid::numerics {

using ScalarFn = std::function<double(double)>;

/// Declares an integrable power singularity of the (x-a)^{-1/2} class at one
/// or both endpoints of the integration interval; handled by the substitution
/// x = a + s^2 (resp. x = b - s^2).
enum class EndpointSingularity { None, InvSqrtLeft, InvSqrtRight, InvSqrtBoth };

/// Shared configuration for all adaptive quadrature in the library.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 50;  // bisection depth per interval
    EndpointSingularity singularity = EndpointSingularity::None;

    void validate() const;  // throws std::invalid_argument on bad tolerances
};

/// Raised when the subdivision budget is exhausted before the requested
/// tolerance is met; carries the best estimate and its error bound.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& msg, double best, double bound)
        : std::runtime_error(msg), best_(best), bound_(bound) {}
    double best_estimate() const { return best_; }
    double error_bound() const { return bound_; }

private:
    double best_, bound_;
};

/** Globally adaptive Gauss--Kronrod (7,15) integration of fn over [a,b].
    The interval with the largest error estimate is bisected until the sum of
    the estimates meets max(abs_tol, rel_tol*|result|). Declared endpoint
    singularities are removed by a square-root substitution before any
    subdivision takes place. */
double integrate(const ScalarFn& fn, double a, double b,
                 const QuadratureSpec& spec = {});

enum class Side { Left, Right };

struct LimitResult {
    double value;
    double error_estimate;
};

class DivergentLimitError : public std::runtime_error {
public:
    explicit DivergentLimitError(const std::string& msg)
        : std::runtime_error(msg) {}
};

/// One-sided limit of fn at x0 by Richardson extrapolation of fn(x0 +- h)
/// over a geometric h-sequence. Throws DivergentLimitError when the sampled
/// values blow up instead of settling.
LimitResult one_sided_limit(const ScalarFn& fn, double x0, Side side);

/** Finite-difference derivative of order m (m = 1 or 2) from a 5-point
    stencil of spacing h. The stencil slides to stay inside [lo, hi], so the
    formula degrades gracefully to one-sided near the domain ends. Weights are
    generated by Fornberg's recursion for the actual node layout. */
double fd_derivative(const ScalarFn& fn, double x, int m, double h,
                     double lo = -std::numeric_limits<double>::infinity(),
                     double hi = std::numeric_limits<double>::infinity());

/// Finite-difference weights for the m-th derivative at x0 given arbitrary
/// distinct nodes (Fornberg 1988).
std::vector<double> fd_weights(const std::vector<double>& nodes, double x0, int m);

/// Root of a continuous sign-changing function by bisection.
double bisect_root(const ScalarFn& fn, double lo, double hi,
                   double tol = 1e-12, int max_iter = 200);

/** Monotone piecewise-cubic interpolation (Fritsch--Carlson slopes).
    Evaluation outside the node range throws std::domain_error; the profile
    conventions of this library never require extrapolation. */
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;  // piecewise linear, jumps at nodes

    const std::vector<double>& nodes() const { return xs_; }
    const std::vector<double>& values() const { return ys_; }
    double min_spacing() const;
    double max_spacing() const;

private:
    int interval_of(double x) const;
    std::vector<double> xs_, ys_, slopes_;
};

/// Dense polynomial with ascending coefficients; used as the smooth test
/// function family for distribution pairings.
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    explicit Polynomial(std::vector<double> coeffs);

    double operator()(double x) const;
    Polynomial derivative() const;
    const std::vector<double>& coefficients() const { return coeffs_; }

private:
    std::vector<double> coeffs_;
};

/// A smooth scalar function bundled with its first two derivatives, the
/// currency of the distribution calculus (multipliers and test functions).
struct SmoothFn {
    ScalarFn value;
    ScalarFn deriv1;
    ScalarFn deriv2;

    static SmoothFn from_polynomial(const Polynomial& p);
};

/// Dense nonnegative least squares min |M c - f|, c >= 0.
struct NnlsProblem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd target;
    int max_iterations = 0;      // 0 means 10 * cols
    double tolerance = 1e-12;

    void validate() const;  // finite entries, rows/cols >= 1
};

struct NnlsSolution {
    Eigen::VectorXd coefficients;
    double residual_norm;  // euclidean norm of f - M c
    int iterations;
};

class NnlsError : public std::runtime_error {
public:
    explicit NnlsError(const std::string& msg) : std::runtime_error(msg) {}
};

/** Lawson--Hanson active-set solver. The passive-set least-squares subproblem
    is solved by column-pivoted QR; ties in the dual selection break toward the
    lowest index, so the iteration is deterministic for a fixed input. */
NnlsSolution nnls_solve(const NnlsProblem& problem);

}  // namespace zonoid::numerics
