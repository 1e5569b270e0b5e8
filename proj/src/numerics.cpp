#include "zonoid/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

namespace zonoid::numerics {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1,1] (positive half).
// Node indices 1,3,5,7 are the embedded 7-point Gauss abscissae.
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkEstimate {
    double value;
    double error;
};

GkEstimate gk15(const ScalarFn& fn, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double fc = fn(mid);
    double gauss = fc * kWg[3];
    double kron = fc * kWgk[7];
    double abs_sum = std::abs(fc) * kWgk[7];
    for (int k = 0; k < 7; ++k) {
        const double dx = half * kXgk[k];
        const double f1 = fn(mid - dx);
        const double f2 = fn(mid + dx);
        kron += kWgk[k] * (f1 + f2);
        abs_sum += kWgk[k] * (std::abs(f1) + std::abs(f2));
        if (k % 2 == 1) gauss += kWg[k / 2] * (f1 + f2);
    }
    kron *= half;
    gauss *= half;
    abs_sum *= std::abs(half);

    // QUADPACK-style damped error estimate
    double err = std::abs(kron - gauss);
    if (abs_sum > 0.0 && err > 0.0) {
        const double scale = std::pow(200.0 * err / abs_sum, 1.5);
        if (scale < 1.0) err = abs_sum * scale;
    }
    return {kron, err};
}

struct Interval {
    double a, b;
    double value, error;
    int depth;
    bool operator<(const Interval& o) const { return error < o.error; }
};

double integrate_core(const ScalarFn& fn, double a, double b,
                      const QuadratureSpec& spec) {
    if (a == b) return 0.0;
    std::priority_queue<Interval> heap;
    GkEstimate first = gk15(fn, a, b);
    heap.push({a, b, first.value, first.error, 0});
    double total = first.value;
    double total_err = first.error;

    const int max_intervals = 1 << 16;
    int n_intervals = 1;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (heap.empty())
            break;
        Interval worst = heap.top();
        if (worst.depth >= spec.max_depth || n_intervals >= max_intervals) {
            std::ostringstream msg;
            msg << "quadrature did not converge: estimate " << total
                << ", error bound " << total_err;
            throw QuadratureError(msg.str(), total, total_err);
        }
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        GkEstimate left = gk15(fn, worst.a, m);
        GkEstimate right = gk15(fn, m, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.a, m, left.value, left.error, worst.depth + 1});
        heap.push({m, worst.b, right.value, right.error, worst.depth + 1});
        ++n_intervals;
    }
    return total;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    if (max_depth < 1)
        throw std::invalid_argument("QuadratureSpec: max_depth must be >= 1");
}

double integrate(const ScalarFn& fn, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    if (!(a <= b)) return -integrate(fn, b, a, spec);
    if (a == b) return 0.0;

    QuadratureSpec plain = spec;
    plain.singularity = EndpointSingularity::None;
    switch (spec.singularity) {
        case EndpointSingularity::None:
            return integrate_core(fn, a, b, plain);
        case EndpointSingularity::InvSqrtLeft: {
            // x = a + s^2; GK nodes are interior, so fn is never hit at x = a
            const double smax = std::sqrt(b - a);
            return integrate_core(
                [&](double s) { return 2.0 * s * fn(a + s * s); }, 0.0, smax, plain);
        }
        case EndpointSingularity::InvSqrtRight: {
            const double smax = std::sqrt(b - a);
            return integrate_core(
                [&](double s) { return 2.0 * s * fn(b - s * s); }, 0.0, smax, plain);
        }
        case EndpointSingularity::InvSqrtBoth: {
            const double m = 0.5 * (a + b);
            QuadratureSpec halved = plain;
            halved.abs_tol = 0.5 * spec.abs_tol;
            QuadratureSpec left = halved, right = halved;
            left.singularity = EndpointSingularity::InvSqrtLeft;
            right.singularity = EndpointSingularity::InvSqrtRight;
            return integrate(fn, a, m, left) + integrate(fn, m, b, right);
        }
    }
    return 0.0;  // unreachable
}

LimitResult one_sided_limit(const ScalarFn& fn, double x0, Side side) {
    const int kSteps = 14;
    const double sign = (side == Side::Right) ? 1.0 : -1.0;
    double h = 1e-2 * std::max(1.0, std::abs(x0));

    std::vector<double> hs, table;
    hs.reserve(kSteps);
    table.reserve(kSteps);
    double best = std::numeric_limits<double>::quiet_NaN();
    double best_err = std::numeric_limits<double>::infinity();
    double first_mag = 0.0;

    for (int k = 0; k < kSteps; ++k, h *= 0.5) {
        const double v = fn(x0 + sign * h);
        if (!std::isfinite(v))
            throw DivergentLimitError("one_sided_limit: non-finite sample");
        if (k == 0) first_mag = std::max(1.0, std::abs(v));
        if (std::abs(v) > 1e12 * first_mag)
            throw DivergentLimitError("one_sided_limit: samples diverge");
        hs.push_back(h);
        table.push_back(v);
        // Neville extrapolation to h = 0 along the current diagonal
        for (int j = static_cast<int>(table.size()) - 2; j >= 0; --j)
            table[j] = table[j + 1] +
                       (table[j + 1] - table[j]) * hs.back() / (hs[j] - hs.back());
        if (k > 0) {
            const double err = std::abs(table[0] - best);
            if (std::isfinite(table[0]) && err < best_err) {
                best = table[0];
                best_err = err;
            }
            if (best_err < 1e-14 * std::max(1.0, std::abs(best))) break;
        } else {
            best = table[0];
        }
    }
    if (!std::isfinite(best) || best_err > 1e-2 * std::max(1.0, std::abs(best)))
        throw DivergentLimitError("one_sided_limit: extrapolation did not settle");
    return {best, best_err};
}

std::vector<double> fd_weights(const std::vector<double>& nodes, double x0, int m) {
    // Fornberg's recursion for the weights of the m-th derivative at x0
    // (Math. Comp. 51, 1988). C(j,k) is the weight of node j in the k-th
    // derivative formula built from nodes 0..i.
    const int n = static_cast<int>(nodes.size());
    if (n < m + 1)
        throw std::invalid_argument("fd_weights: not enough nodes for derivative order");
    std::vector<std::vector<double>> C(n, std::vector<double>(m + 1, 0.0));
    C[0][0] = 1.0;
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    C[i][k] = c1 * (k * C[i - 1][k - 1] - c5 * C[i - 1][k]) / c2;
                C[i][0] = -c1 * c5 * C[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                C[j][k] = (c4 * C[j][k] - k * C[j][k - 1]) / c3;
            C[j][0] = c4 * C[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = C[j][m];
    return out;
}

double fd_derivative(const ScalarFn& fn, double x, int m, double h,
                     double lo, double hi) {
    if (m < 1 || m > 2)
        throw std::invalid_argument("fd_derivative: order must be 1 or 2");
    if (!(h > 0.0))
        throw std::invalid_argument("fd_derivative: step must be positive");
    // slide the 5-point pattern {-2,...,2}*h so it fits in [lo, hi]
    double shift = 0.0;
    if (x - 2.0 * h < lo) shift = lo - (x - 2.0 * h);
    if (x + 2.0 * h + shift > hi) shift = hi - (x + 2.0 * h);
    std::vector<double> nodes(5);
    for (int k = 0; k < 5; ++k) nodes[k] = x + shift + (k - 2) * h;
    const std::vector<double> w = fd_weights(nodes, x, m);
    double acc = 0.0;
    for (int k = 0; k < 5; ++k) acc += w[k] * fn(nodes[k]);
    return acc;
}

double bisect_root(const ScalarFn& fn, double lo, double hi, double tol, int max_iter) {
    double flo = fn(lo), fhi = fn(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("bisect_root: no sign change on bracket");
    for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// MonotoneCubic (PCHIP)

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    const size_t n = xs_.size();
    if (n < 2 || ys_.size() != n)
        throw std::invalid_argument("MonotoneCubic: need >= 2 matching nodes");
    for (size_t i = 0; i + 1 < n; ++i)
        if (!(xs_[i] < xs_[i + 1]))
            throw std::invalid_argument("MonotoneCubic: nodes must be strictly increasing");

    std::vector<double> h(n - 1), delta(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = xs_[i + 1] - xs_[i];
        delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
    }
    slopes_.assign(n, 0.0);
    if (n == 2) {
        slopes_[0] = slopes_[1] = delta[0];
    } else {
        for (size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                slopes_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        auto endpoint = [](double h0, double h1, double d0, double d1) {
            double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if (s * d0 <= 0.0)
                s = 0.0;
            else if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0))
                s = 3.0 * d0;
            return s;
        };
        slopes_[0] = endpoint(h[0], h[1], delta[0], delta[1]);
        slopes_[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
}

int MonotoneCubic::interval_of(double x) const {
    if (x < xs_.front() - 1e-12 || x > xs_.back() + 1e-12)
        throw std::domain_error("MonotoneCubic: evaluation outside node range");
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    int i = static_cast<int>(it - xs_.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(xs_.size()) - 2);
}

double MonotoneCubic::value(double x) const {
    const int i = interval_of(x);
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * ys_[i] + h10 * h * slopes_[i] + h01 * ys_[i + 1] + h11 * h * slopes_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
    const int i = interval_of(x);
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double t2 = t * t;
    const double d00 = (6 * t2 - 6 * t) / h;
    const double d10 = 3 * t2 - 4 * t + 1;
    const double d01 = (-6 * t2 + 6 * t) / h;
    const double d11 = 3 * t2 - 2 * t;
    return d00 * ys_[i] + d10 * slopes_[i] + d01 * ys_[i + 1] + d11 * slopes_[i + 1];
}

double MonotoneCubic::second_derivative(double x) const {
    const int i = interval_of(x);
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double s00 = (12 * t - 6) / (h * h);
    const double s10 = (6 * t - 4) / h;
    const double s01 = (-12 * t + 6) / (h * h);
    const double s11 = (6 * t - 2) / h;
    return s00 * ys_[i] + s10 * slopes_[i] + s01 * ys_[i + 1] + s11 * slopes_[i + 1];
}

double MonotoneCubic::min_spacing() const {
    double m = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < xs_.size(); ++i) m = std::min(m, xs_[i + 1] - xs_[i]);
    return m;
}

double MonotoneCubic::max_spacing() const {
    double m = 0.0;
    for (size_t i = 0; i + 1 < xs_.size(); ++i) m = std::max(m, xs_[i + 1] - xs_[i]);
    return m;
}

// ---------------------------------------------------------------------------
// Polynomial / SmoothFn

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial{{0.0}};
    std::vector<double> d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return Polynomial{std::move(d)};
}

SmoothFn SmoothFn::from_polynomial(const Polynomial& p) {
    const Polynomial d1 = p.derivative();
    const Polynomial d2 = d1.derivative();
    return SmoothFn{[p](double x) { return p(x); },
                    [d1](double x) { return d1(x); },
                    [d2](double x) { return d2(x); }};
}

// ---------------------------------------------------------------------------
// NNLS (Lawson--Hanson)

void NnlsProblem::validate() const {
    if (matrix.rows() < 1 || matrix.cols() < 1)
        throw std::invalid_argument("NnlsProblem: matrix must be at least 1x1");
    if (target.size() != matrix.rows())
        throw std::invalid_argument("NnlsProblem: target length must match matrix rows");
    if (!matrix.allFinite() || !target.allFinite())
        throw std::invalid_argument("NnlsProblem: entries must be finite");
    if (!(tolerance > 0.0))
        throw std::invalid_argument("NnlsProblem: tolerance must be positive");
}

NnlsSolution nnls_solve(const NnlsProblem& problem) {
    problem.validate();
    const Eigen::MatrixXd& M = problem.matrix;
    const Eigen::VectorXd& f = problem.target;
    const Eigen::Index n = M.cols();
    const int max_iter =
        problem.max_iterations > 0 ? problem.max_iterations : 10 * static_cast<int>(n);
    const double tol = problem.tolerance * std::max(1.0, f.lpNorm<Eigen::Infinity>());

    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive(n, false);
    std::vector<Eigen::Index> pset;
    int iterations = 0;

    auto solve_passive = [&](void) -> Eigen::VectorXd {
        Eigen::MatrixXd Mp(M.rows(), static_cast<Eigen::Index>(pset.size()));
        for (size_t j = 0; j < pset.size(); ++j) Mp.col(static_cast<Eigen::Index>(j)) = M.col(pset[j]);
        return Mp.colPivHouseholderQr().solve(f);
    };

    while (true) {
        const Eigen::VectorXd w = M.transpose() * (f - M * c);
        Eigen::Index best = -1;
        double best_w = tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!passive[j] && w[j] > best_w) {
                best_w = w[j];
                best = j;
            }
        }
        if (best < 0) break;  // KKT satisfied
        passive[best] = true;
        pset.push_back(best);

        while (true) {
            if (++iterations > max_iter)
                throw NnlsError("nnls_solve: iteration cap exceeded");
            Eigen::VectorXd z = solve_passive();
            bool feasible = true;
            for (Eigen::Index j = 0; j < z.size(); ++j)
                if (z[j] <= tol) {
                    feasible = false;
                    break;
                }
            if (feasible) {
                for (size_t j = 0; j < pset.size(); ++j) c[pset[j]] = z[static_cast<Eigen::Index>(j)];
                break;
            }
            // step toward z until the first passive coefficient hits zero
            double alpha = std::numeric_limits<double>::infinity();
            for (size_t j = 0; j < pset.size(); ++j) {
                const double zj = z[static_cast<Eigen::Index>(j)];
                if (zj <= tol) {
                    const double cj = c[pset[j]];
                    alpha = std::min(alpha, cj / (cj - zj));
                }
            }
            for (size_t j = 0; j < pset.size(); ++j) {
                const double cj = c[pset[j]];
                c[pset[j]] = cj + alpha * (z[static_cast<Eigen::Index>(j)] - cj);
            }
            std::vector<Eigen::Index> kept;
            for (Eigen::Index j : pset) {
                if (c[j] > tol) {
                    kept.push_back(j);
                } else {
                    c[j] = 0.0;
                    passive[j] = false;
                }
            }
            pset = std::move(kept);
            if (pset.empty()) break;
        }
    }
    return {c, (f - M * c).norm(), iterations};
}

}  // namespace zonoid::numerics
