#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zonoid/barrel.hpp"
#include "zonoid/transforms.hpp"

namespace zonoid::certify {

/// Residual thresholds of the numerical zonoid certificate at the default
/// 200 x 400 grids, fixed by a calibration run against the closed forms:
/// the sup residual stays below 3e-5 for every r <= 1 tested and above
/// 8e-3 at r = 1.3, so accept/reject at 1e-4 / 1e-3 leaves a decade of
/// margin on each side.
struct CertificateThresholds {
    double accept = 1e-4;
    double reject = 1e-3;
};

constexpr int kDefaultLatitudes = 200;
constexpr int kDefaultDirections = 400;
constexpr unsigned kDefaultSeed = 20260810u;

struct MassCluster {
    double x_center;  // coefficient-weighted center of the cluster
    double mass;      // summed nonnegative coefficients
};

/// Outcome of the numerical zonoid certification.
struct CertificateReport {
    std::string norm_kind;  // "barrel" or "euclidean"
    double r = 0.0;         // barrel radius when norm_kind == "barrel"
    int n = 4;
    int latitude_count = 0;
    int direction_count = 0;
    double residual_sup = 0.0;  // sup over the direction grid
    double residual_l2 = 0.0;   // euclidean norm from the solver
    std::string verdict;        // "zonoid-consistent" | "not-zonoid-consistent" | "inconclusive"
    bool positive = false;
    CertificateThresholds thresholds;
    std::vector<double> nodes;         // latitude grid
    std::vector<double> coefficients;  // recovered nonnegative masses per node
    std::vector<MassCluster> clusters;
    double threshold_estimate = std::numeric_limits<double>::quiet_NaN();  // set by sweeps
};

/// Chebyshev-spaced latitude grid on [0,1] (clustered toward both ends) and
/// the uniform direction grid in the height variable.
std::vector<double> chebyshev_latitudes(int count);
std::vector<double> uniform_directions(int count);

/// Sup over the direction grid of |T mu (t) - f(cos^{-1}|t|)|.
double forward_residual(const distributions::LatitudeMeasure& mu,
                        const profiles::AngleProfile& f, int n, std::span<const double> t_grid,
                        const numerics::QuadratureSpec& quad = {});

/** Discretizes T mu = f on the latitude grid, solves the nonnegative least
    squares system and reports the sup residual together with the recovered
    mass profile. The verdict compares the residual against the calibrated
    thresholds. */
CertificateReport nnls_certify(const profiles::AngleProfile& f, int n,
                               int latitudes = kDefaultLatitudes,
                               int directions = kDefaultDirections,
                               CertificateThresholds thresholds = {});

class BracketError : public std::runtime_error {
public:
    explicit BracketError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class SweepMode { ClosedForm, Nnls };

struct SweepStep {
    double lo, hi, mid;
    bool mid_zonoid;
};

struct SweepResult {
    double threshold;  // estimated critical radius
    std::vector<SweepStep> history;
};

/** Bisection for the critical radius separating zonoid from non-zonoid
    polars: on the closed-form verdict in ClosedForm mode, on the NNLS accept
    threshold in Nnls mode. Throws BracketError when the bracket endpoints do
    not disagree. */
SweepResult threshold_sweep(double r_lo, double r_hi, double tol, SweepMode mode,
                            int latitudes = kDefaultLatitudes,
                            int directions = kDefaultDirections);

/** Random points of the facet disc e_n + r B^{n-1} all have gauge 1 and
    satisfy the flat-face triangle equality |2 e_n| = |e_n + c| + |e_n - c|;
    returns the conjunction over sample_count draws. */
bool facet_gauge_check(const profiles::BarrelParams& params, int sample_count,
                       unsigned seed = kDefaultSeed);

/** All unit vectors whose inner products with the given basis share one
    modulus: one direction per sign pattern, at most 2^n after deduplication.
    Throws std::invalid_argument on a singular input set. */
std::vector<std::vector<double>> equal_modulus_directions(
    const std::vector<std::vector<double>>& basis);

using GaugeFunction = std::function<double(const std::vector<double>&)>;

/// Complementary projections selecting the two summand components of a point.
struct DirectSumSplitter {
    std::function<std::vector<double>(const std::vector<double>&)> first;
    std::function<std::vector<double>(const std::vector<double>&)> second;
};

/// Gauge of a direct sum: x -> max(gauge_b(Px), gauge_c(Qx)).
GaugeFunction direct_sum_gauge(GaugeFunction gauge_b, GaugeFunction gauge_c,
                               DirectSumSplitter splitter);

}  // namespace zonoid::certify
