#include "zonoid/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zonoid::distributions {

namespace {

constexpr double kBreakpointTol = 1e-12;
constexpr double kJumpRelTol = 1e-7;  // jump detection threshold against value scale

numerics::ScalarFn fd1_of(const numerics::ScalarFn& f, double lo, double hi) {
    return [f, lo, hi](double x) {
        return numerics::fd_derivative(f, x, 1, std::max(1e-5, 1e-7 * (hi - lo)), lo, hi);
    };
}

numerics::ScalarFn fd2_of(const numerics::ScalarFn& f, double lo, double hi) {
    return [f, lo, hi](double x) {
        return numerics::fd_derivative(f, x, 2, std::max(1e-3, 1e-4 * (hi - lo)), lo, hi);
    };
}

bool is_half_pole(const SingularityFlag& s) {
    return s.singular && std::abs(s.exponent + 0.5) < 0.26;  // the -1/2 class
}

}  // namespace

SmoothPiece::SmoothPiece(double lo, double hi, numerics::SmoothFn fn, PieceKind kind,
                         std::map<std::string, double> params, SingularityFlag left_sing,
                         SingularityFlag right_sing)
    : lo_(lo),
      hi_(hi),
      fn_(std::move(fn)),
      kind_(kind),
      params_(std::move(params)),
      left_sing_(left_sing),
      right_sing_(right_sing) {
    if (!(lo_ < hi_)) throw std::invalid_argument("SmoothPiece: need lo < hi");
    if (!fn_.value) throw std::invalid_argument("SmoothPiece: missing value evaluator");
    if (!fn_.deriv1) fn_.deriv1 = fd1_of(fn_.value, lo_, hi_);
    if (!fn_.deriv2) fn_.deriv2 = fd2_of(fn_.value, lo_, hi_);
    for (const SingularityFlag* s : {&left_sing_, &right_sing_})
        if (s->singular && !(s->exponent > -1.0))
            throw std::invalid_argument("SmoothPiece: singularity exponent must exceed -1");
    compute_limits();
}

void SmoothPiece::compute_limits() {
    const double span = hi_ - lo_;
    auto limit_at = [&](double end, bool from_right, const SingularityFlag& flag) {
        if (flag.singular) {
            const double probe = fn_.value(end + (from_right ? 1.0 : -1.0) * 1e-9 * span);
            return std::copysign(std::numeric_limits<double>::infinity(), probe);
        }
        const double direct = fn_.value(end);
        if (std::isfinite(direct)) return direct;
        try {
            return numerics::one_sided_limit(fn_.value, end,
                                             from_right ? numerics::Side::Right
                                                        : numerics::Side::Left)
                .value;
        } catch (const numerics::DivergentLimitError&) {
            return std::copysign(std::numeric_limits<double>::infinity(),
                                 fn_.value(end + (from_right ? 1.0 : -1.0) * 1e-9 * span));
        }
    };
    limit_lo_ = limit_at(lo_, true, left_sing_);
    limit_hi_ = limit_at(hi_, false, right_sing_);
}

SmoothPiece SmoothPiece::zero(double lo, double hi) {
    auto z = [](double) { return 0.0; };
    return SmoothPiece(lo, hi, numerics::SmoothFn{z, z, z}, PieceKind::Zero);
}

SmoothPiece SmoothPiece::constant(double lo, double hi, double value) {
    auto z = [](double) { return 0.0; };
    return SmoothPiece(lo, hi, numerics::SmoothFn{[value](double) { return value; }, z, z},
                       PieceKind::Constant, {{"value", value}});
}

SmoothPiece SmoothPiece::sampled(double lo, double hi, std::vector<double> xs,
                                 std::vector<double> ys) {
    auto interp = std::make_shared<numerics::MonotoneCubic>(std::move(xs), std::move(ys));
    if (interp->nodes().front() > lo + kBreakpointTol ||
        interp->nodes().back() < hi - kBreakpointTol)
        throw std::invalid_argument("SmoothPiece::sampled: nodes must cover [lo, hi]");
    numerics::SmoothFn fn{
        [interp, lo, hi](double x) { return interp->value(std::clamp(x, lo, hi)); },
        [interp, lo, hi](double x) { return interp->derivative(std::clamp(x, lo, hi)); },
        [interp, lo, hi](double x) { return interp->second_derivative(std::clamp(x, lo, hi)); }};
    SmoothPiece p(lo, hi, std::move(fn), PieceKind::Sampled);
    p.interp_ = std::move(interp);
    return p;
}

const std::vector<double>* SmoothPiece::sample_nodes() const {
    return interp_ ? &interp_->nodes() : nullptr;
}

const std::vector<double>* SmoothPiece::sample_values() const {
    return interp_ ? &interp_->values() : nullptr;
}

SmoothPiece SmoothPiece::restricted(double lo, double hi) const {
    if (lo < lo_ - kBreakpointTol || hi > hi_ + kBreakpointTol || !(lo < hi))
        throw std::invalid_argument("SmoothPiece::restricted: not a sub-interval");
    SingularityFlag left = (std::abs(lo - lo_) <= kBreakpointTol) ? left_sing_ : SingularityFlag{};
    SingularityFlag right =
        (std::abs(hi - hi_) <= kBreakpointTol) ? right_sing_ : SingularityFlag{};
    SmoothPiece p(lo, hi, fn_, kind_, params_, left, right);
    p.interp_ = interp_;
    return p;
}

SmoothPiece SmoothPiece::derivative() const {
    if (kind_ == PieceKind::Zero || kind_ == PieceKind::Constant) return zero(lo_, hi_);
    numerics::SmoothFn d{fn_.deriv1, fn_.deriv2, fd1_of(fn_.deriv2, lo_, hi_)};
    SingularityFlag left = left_sing_, right = right_sing_;
    if (left.singular) left.exponent -= 1.0;
    if (right.singular) right.exponent -= 1.0;
    // a dropped exponent may leave the derivative non-integrable; pairing
    // rejects such pieces when it meets them
    for (SingularityFlag* s : {&left, &right})
        if (s->singular && !(s->exponent > -1.0)) s->exponent = -1.0 + 1e-9;
    return SmoothPiece(lo_, hi_, std::move(d), PieceKind::Closure, {}, left, right);
}

SmoothPiece SmoothPiece::times(const numerics::SmoothFn& a) const {
    if (kind_ == PieceKind::Zero) return zero(lo_, hi_);
    const numerics::SmoothFn f = fn_;
    numerics::SmoothFn prod{
        [f, a](double x) { return f.value(x) * a.value(x); },
        [f, a](double x) { return f.deriv1(x) * a.value(x) + f.value(x) * a.deriv1(x); },
        [f, a](double x) {
            return f.deriv2(x) * a.value(x) + 2.0 * f.deriv1(x) * a.deriv1(x) +
                   f.value(x) * a.deriv2(x);
        }};
    return SmoothPiece(lo_, hi_, std::move(prod), PieceKind::Closure, {}, left_sing_, right_sing_);
}

SmoothPiece SmoothPiece::plus(const SmoothPiece& other) const {
    if (std::abs(lo_ - other.lo_) > kBreakpointTol || std::abs(hi_ - other.hi_) > kBreakpointTol)
        throw std::invalid_argument("SmoothPiece::plus: interval mismatch");
    if (kind_ == PieceKind::Zero) return other;
    if (other.kind_ == PieceKind::Zero) return *this;
    const numerics::SmoothFn f = fn_, g = other.fn_;
    numerics::SmoothFn sum{[f, g](double x) { return f.value(x) + g.value(x); },
                           [f, g](double x) { return f.deriv1(x) + g.deriv1(x); },
                           [f, g](double x) { return f.deriv2(x) + g.deriv2(x); }};
    SingularityFlag left = left_sing_.singular ? left_sing_ : other.left_sing_;
    SingularityFlag right = right_sing_.singular ? right_sing_ : other.right_sing_;
    return SmoothPiece(lo_, hi_, std::move(sum), PieceKind::Closure, {}, left, right);
}

SmoothPiece SmoothPiece::scaled(double factor) const {
    if (kind_ == PieceKind::Zero || factor == 0.0) return zero(lo_, hi_);
    if (kind_ == PieceKind::Constant) return constant(lo_, hi_, factor * params_.at("value"));
    const numerics::SmoothFn f = fn_;
    numerics::SmoothFn s{[f, factor](double x) { return factor * f.value(x); },
                         [f, factor](double x) { return factor * f.deriv1(x); },
                         [f, factor](double x) { return factor * f.deriv2(x); }};
    std::map<std::string, double> params = params_;
    PieceKind kind = kind_;
    if (kind == PieceKind::PolarGenerating3) {
        params["scale"] = factor * params.at("scale");
    } else if (kind != PieceKind::Closure) {
        kind = PieceKind::Closure;
        params.clear();
    }
    SmoothPiece p(lo_, hi_, std::move(s), kind, std::move(params), left_sing_, right_sing_);
    return p;
}

bool SmoothPiece::nonnegative() const {
    switch (kind_) {
        case PieceKind::Zero:
            return true;
        case PieceKind::Constant:
            return params_.at("value") >= 0.0;
        case PieceKind::BarrelGenerating:
            return params_.at("r") <= 1.0;  // sign of the density equals sign of 1 - r^2
        case PieceKind::PolarGenerating3:
            return params_.at("scale") >= 0.0;
        case PieceKind::Closure:
        case PieceKind::Sampled:
            break;
    }
    const int kProbes = 257;
    double min_val = 0.0, max_abs = 1.0;
    for (int i = 0; i <= kProbes; ++i) {
        double x = lo_ + (hi_ - lo_) * i / kProbes;
        if (i == 0 && left_sing_.singular) x += 1e-9 * (hi_ - lo_);
        if (i == kProbes && right_sing_.singular) x -= 1e-9 * (hi_ - lo_);
        const double v = fn_.value(x);
        min_val = std::min(min_val, v);
        max_abs = std::max(max_abs, std::abs(v));
    }
    return min_val >= -1e-12 * max_abs;
}

// ---------------------------------------------------------------------------
// PiecewiseSmoothFn

PiecewiseSmoothFn::PiecewiseSmoothFn() { pieces_.push_back(SmoothPiece::zero(0.0, 1.0)); }

PiecewiseSmoothFn::PiecewiseSmoothFn(std::vector<SmoothPiece> pieces)
    : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw std::invalid_argument("PiecewiseSmoothFn: no pieces");
    if (std::abs(pieces_.front().lo()) > kBreakpointTol ||
        std::abs(pieces_.back().hi() - 1.0) > kBreakpointTol)
        throw std::invalid_argument("PiecewiseSmoothFn: pieces must cover [0, 1]");
    for (size_t i = 0; i + 1 < pieces_.size(); ++i)
        if (std::abs(pieces_[i].hi() - pieces_[i + 1].lo()) > kBreakpointTol)
            throw std::invalid_argument("PiecewiseSmoothFn: pieces must be contiguous");
}

PiecewiseSmoothFn PiecewiseSmoothFn::zero() { return PiecewiseSmoothFn(); }

PiecewiseSmoothFn PiecewiseSmoothFn::constant(double value) {
    return PiecewiseSmoothFn({SmoothPiece::constant(0.0, 1.0, value)});
}

PiecewiseSmoothFn PiecewiseSmoothFn::single(numerics::SmoothFn fn) {
    return PiecewiseSmoothFn({SmoothPiece(0.0, 1.0, std::move(fn))});
}

std::vector<double> PiecewiseSmoothFn::breakpoints() const {
    std::vector<double> bs;
    bs.reserve(pieces_.size() + 1);
    bs.push_back(pieces_.front().lo());
    for (const auto& p : pieces_) bs.push_back(p.hi());
    return bs;
}

size_t PiecewiseSmoothFn::piece_index(double x) const {
    if (x < -kBreakpointTol || x > 1.0 + kBreakpointTol)
        throw std::domain_error("PiecewiseSmoothFn: x outside [0, 1]");
    for (size_t i = 0; i + 1 < pieces_.size(); ++i)
        if (x < pieces_[i].hi()) return i;
    return pieces_.size() - 1;
}

double PiecewiseSmoothFn::value(double x) const { return pieces_[piece_index(x)].value(x); }
double PiecewiseSmoothFn::deriv1(double x) const { return pieces_[piece_index(x)].deriv1(x); }
double PiecewiseSmoothFn::deriv2(double x) const { return pieces_[piece_index(x)].deriv2(x); }

double PiecewiseSmoothFn::jump_at(size_t i) const {
    if (i + 1 >= pieces_.size())
        throw std::out_of_range("PiecewiseSmoothFn::jump_at: no such interior breakpoint");
    return pieces_[i + 1].limit_lo() - pieces_[i].limit_hi();
}

PiecewiseSmoothFn PiecewiseSmoothFn::plus(const PiecewiseSmoothFn& other) const {
    std::vector<double> bs = breakpoints();
    for (double b : other.breakpoints()) bs.push_back(b);
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end(),
                         [](double u, double v) { return std::abs(u - v) <= kBreakpointTol; }),
             bs.end());
    std::vector<SmoothPiece> out;
    for (size_t i = 0; i + 1 < bs.size(); ++i) {
        const double mid = 0.5 * (bs[i] + bs[i + 1]);
        const SmoothPiece a = pieces_[piece_index(mid)].restricted(bs[i], bs[i + 1]);
        const SmoothPiece b = other.pieces_[other.piece_index(mid)].restricted(bs[i], bs[i + 1]);
        out.push_back(a.plus(b));
    }
    return PiecewiseSmoothFn(std::move(out));
}

PiecewiseSmoothFn PiecewiseSmoothFn::times(const numerics::SmoothFn& a) const {
    std::vector<SmoothPiece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back(p.times(a));
    return PiecewiseSmoothFn(std::move(out));
}

PiecewiseSmoothFn PiecewiseSmoothFn::scaled(double factor) const {
    std::vector<SmoothPiece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back(p.scaled(factor));
    return PiecewiseSmoothFn(std::move(out));
}

bool PiecewiseSmoothFn::nonnegative() const {
    return std::all_of(pieces_.begin(), pieces_.end(),
                       [](const SmoothPiece& p) { return p.nonnegative(); });
}

bool PiecewiseSmoothFn::is_exactly_zero() const {
    return std::all_of(pieces_.begin(), pieces_.end(),
                       [](const SmoothPiece& p) { return p.is_exactly_zero(); });
}

std::pair<PiecewiseSmoothFn, std::vector<Atom>> distributional_derivative(
    const PiecewiseSmoothFn& f) {
    std::vector<Atom> atoms;
    const auto& pieces = f.pieces();
    for (size_t i = 0; i + 1 < pieces.size(); ++i) {
        const double l_minus = pieces[i].limit_hi();
        const double l_plus = pieces[i + 1].limit_lo();
        if (!std::isfinite(l_minus) || !std::isfinite(l_plus))
            throw DistributionError(
                "distributional_derivative: infinite one-sided limit at interior breakpoint");
        const double jump = l_plus - l_minus;
        const double scale = std::max({1.0, std::abs(l_minus), std::abs(l_plus)});
        if (std::abs(jump) > kJumpRelTol * scale) atoms.push_back({pieces[i].hi(), jump});
    }
    std::vector<SmoothPiece> dpieces;
    dpieces.reserve(pieces.size());
    for (const auto& p : pieces) dpieces.push_back(p.derivative());
    return {PiecewiseSmoothFn(std::move(dpieces)), std::move(atoms)};
}

// ---------------------------------------------------------------------------
// SphericalDistributionRS

namespace {

std::vector<Atom> normalize_atoms(std::vector<Atom> atoms) {
    for (const auto& a : atoms) {
        if (!(a.x >= 0.0 && a.x <= 1.0))
            throw std::invalid_argument("atom location outside [0,1]");
        if (!std::isfinite(a.weight)) throw std::invalid_argument("atom weight must be finite");
    }
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
    std::vector<Atom> merged;
    for (const auto& a : atoms) {
        if (!merged.empty() && std::abs(merged.back().x - a.x) <= kBreakpointTol)
            merged.back().weight += a.weight;
        else
            merged.push_back(a);
    }
    std::erase_if(merged, [](const Atom& a) { return a.weight == 0.0; });
    return merged;
}

std::vector<DeltaDerivative> normalize_deltas(std::vector<DeltaDerivative> deltas) {
    for (const auto& d : deltas) {
        if (!(d.x >= 0.0 && d.x <= 1.0))
            throw std::invalid_argument("delta-derivative location outside [0,1]");
        if (!std::isfinite(d.weight))
            throw std::invalid_argument("delta-derivative weight must be finite");
        if (d.order < 1 || d.order > 2)
            throw std::invalid_argument("delta-derivative order must be 1 or 2");
    }
    std::sort(deltas.begin(), deltas.end(),
              [](const DeltaDerivative& a, const DeltaDerivative& b) {
                  return a.x != b.x ? a.x < b.x : a.order < b.order;
              });
    std::vector<DeltaDerivative> merged;
    for (const auto& d : deltas) {
        if (!merged.empty() && std::abs(merged.back().x - d.x) <= kBreakpointTol &&
            merged.back().order == d.order)
            merged.back().weight += d.weight;
        else
            merged.push_back(d);
    }
    std::erase_if(merged, [](const DeltaDerivative& d) { return d.weight == 0.0; });
    return merged;
}

}  // namespace

SphericalDistributionRS::SphericalDistributionRS(int n, PiecewiseSmoothFn density,
                                                 std::vector<Atom> atoms,
                                                 std::vector<DeltaDerivative> delta_derivatives)
    : n_(n),
      density_(std::move(density)),
      atoms_(normalize_atoms(std::move(atoms))),
      deltas_(normalize_deltas(std::move(delta_derivatives))) {
    if (n_ != 3 && n_ != 4)
        throw std::invalid_argument("SphericalDistributionRS: n must be 3 or 4");
}

bool SphericalDistributionRS::is_measure() const {
    if (!deltas_.empty()) return false;
    for (const auto& a : atoms_)
        if (a.weight < 0.0) return false;
    return density_.nonnegative();
}

SphericalDistributionRS derivative_of_distribution(const SphericalDistributionRS& d) {
    auto [ddensity, jump_atoms] = distributional_derivative(d.density());
    std::vector<DeltaDerivative> deltas;
    for (const auto& a : d.atoms()) deltas.push_back({a.x, a.weight, 1});
    for (const auto& dd : d.delta_derivatives()) {
        if (dd.order + 1 > 2)
            throw DistributionError(
                "derivative_of_distribution: distributions of order >= 3 are unsupported");
        deltas.push_back({dd.x, dd.weight, dd.order + 1});
    }
    return SphericalDistributionRS(d.dimension(), std::move(ddensity), std::move(jump_atoms),
                                   std::move(deltas));
}

SphericalDistributionRS multiply_smooth(const SphericalDistributionRS& d,
                                        const numerics::SmoothFn& a) {
    std::vector<Atom> atoms;
    std::vector<DeltaDerivative> deltas;
    for (const auto& at : d.atoms()) atoms.push_back({at.x, a.value(at.x) * at.weight});
    for (const auto& dd : d.delta_derivatives()) {
        // a(x) delta^{(k)}(x-x0) = sum_j (-1)^j C(k,j) a^{(j)}(x0) delta^{(k-j)}
        if (dd.order == 1) {
            deltas.push_back({dd.x, a.value(dd.x) * dd.weight, 1});
            atoms.push_back({dd.x, -a.deriv1(dd.x) * dd.weight});
        } else {
            deltas.push_back({dd.x, a.value(dd.x) * dd.weight, 2});
            deltas.push_back({dd.x, -2.0 * a.deriv1(dd.x) * dd.weight, 1});
            atoms.push_back({dd.x, a.deriv2(dd.x) * dd.weight});
        }
    }
    return SphericalDistributionRS(d.dimension(), d.density().times(a), std::move(atoms),
                                   std::move(deltas));
}

SphericalDistributionRS add(const SphericalDistributionRS& a, const SphericalDistributionRS& b) {
    if (a.dimension() != b.dimension()) throw std::invalid_argument("add: dimension mismatch");
    std::vector<Atom> atoms = a.atoms();
    atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
    std::vector<DeltaDerivative> deltas = a.delta_derivatives();
    deltas.insert(deltas.end(), b.delta_derivatives().begin(), b.delta_derivatives().end());
    return SphericalDistributionRS(a.dimension(), a.density().plus(b.density()), std::move(atoms),
                                   std::move(deltas));
}

SphericalDistributionRS scaled(const SphericalDistributionRS& d, double factor) {
    std::vector<Atom> atoms = d.atoms();
    for (auto& a : atoms) a.weight *= factor;
    std::vector<DeltaDerivative> deltas = d.delta_derivatives();
    for (auto& dd : deltas) dd.weight *= factor;
    return SphericalDistributionRS(d.dimension(), d.density().scaled(factor), std::move(atoms),
                                   std::move(deltas));
}

namespace {

double integrate_piece(const SmoothPiece& p, const numerics::ScalarFn& integrand,
                       const numerics::QuadratureSpec& quad) {
    numerics::QuadratureSpec spec = quad;
    for (const SingularityFlag* s : {&p.left_singularity(), &p.right_singularity()})
        if (s->singular && !is_half_pole(*s))
            throw DistributionError("integrate: unsupported singularity exponent");
    const bool lsing = p.left_singularity().singular;
    const bool rsing = p.right_singularity().singular;
    spec.singularity = lsing && rsing ? numerics::EndpointSingularity::InvSqrtBoth
                       : lsing        ? numerics::EndpointSingularity::InvSqrtLeft
                       : rsing        ? numerics::EndpointSingularity::InvSqrtRight
                                      : numerics::EndpointSingularity::None;
    return numerics::integrate(integrand, p.lo(), p.hi(), spec);
}

}  // namespace

double pair_with_test_function(const SphericalDistributionRS& d, const numerics::SmoothFn& psi,
                               const numerics::QuadratureSpec& quad) {
    double acc = 0.0;
    for (const auto& p : d.density().pieces()) {
        if (p.is_exactly_zero()) continue;
        acc += integrate_piece(p, [&](double x) { return p.value(x) * psi.value(x); }, quad);
    }
    for (const auto& a : d.atoms()) acc += a.weight * psi.value(a.x);
    for (const auto& dd : d.delta_derivatives()) {
        const double dval = dd.order == 1 ? psi.deriv1(dd.x) : psi.deriv2(dd.x);
        acc += (dd.order == 1 ? -1.0 : 1.0) * dd.weight * dval;
    }
    return acc;
}

double latitude_jacobian(int n, double x) {
    if (n == 3) return 2.0 * std::numbers::pi;
    if (n == 4) return 4.0 * std::numbers::pi * std::sqrt(std::max(0.0, 1.0 - x * x));
    throw std::invalid_argument("latitude_jacobian: n must be 3 or 4");
}

// ---------------------------------------------------------------------------
// LatitudeMeasure

LatitudeMeasure::LatitudeMeasure(int n, PiecewiseSmoothFn density)
    : n_(n), density_(std::move(density)) {}

LatitudeMeasure::LatitudeMeasure(const SphericalDistributionRS& d)
    : n_(d.dimension()), density_(d.density()) {
    if (!d.is_measure())
        throw NotAMeasureError("LatitudeMeasure: distribution is not a nonnegative measure");
    for (const auto& a : d.atoms()) {
        // fold the hemispheres: a pair of latitude spheres at +-x0 for x0 > 0,
        // a single equatorial sphere at x0 = 0, zero mass at the pole
        const double fold = a.x > kBreakpointTol ? 2.0 : 1.0;
        const double mass = fold * a.weight * latitude_jacobian(n_, a.x);
        if (mass > 0.0) atoms_.push_back({a.x, mass});
    }
}

LatitudeMeasure LatitudeMeasure::point_mass(int n, double x0, double mass) {
    if (n != 3 && n != 4) throw std::invalid_argument("point_mass: n must be 3 or 4");
    LatitudeMeasure m(n, PiecewiseSmoothFn::zero());
    m.add_point_mass(x0, mass);
    return m;
}

void LatitudeMeasure::add_point_mass(double x0, double mass) {
    if (!(x0 >= 0.0 && x0 <= 1.0)) throw std::invalid_argument("add_point_mass: x0 outside [0,1]");
    if (!(mass >= 0.0) || !std::isfinite(mass))
        throw std::invalid_argument("add_point_mass: mass must be nonnegative");
    for (auto& a : atoms_)
        if (std::abs(a.x - x0) <= kBreakpointTol) {
            a.mass += mass;
            return;
        }
    atoms_.push_back({x0, mass});
    std::sort(atoms_.begin(), atoms_.end(),
              [](const MassAtom& a, const MassAtom& b) { return a.x < b.x; });
}

double LatitudeMeasure::total_mass(const numerics::QuadratureSpec& quad) const {
    double acc = 0.0;
    for (const auto& p : density_.pieces()) {
        if (p.is_exactly_zero()) continue;
        acc += integrate_piece(
            p, [&](double x) { return 2.0 * p.value(x) * latitude_jacobian(n_, x); }, quad);
    }
    for (const auto& a : atoms_) acc += a.mass;
    return acc;
}

double LatitudeMeasure::integrate_against(const numerics::SmoothFn& psi,
                                          const numerics::QuadratureSpec& quad) const {
    double acc = 0.0;
    for (const auto& p : density_.pieces()) {
        if (p.is_exactly_zero()) continue;
        acc += integrate_piece(
            p,
            [&](double x) { return 2.0 * p.value(x) * psi.value(x) * latitude_jacobian(n_, x); },
            quad);
    }
    for (const auto& a : atoms_) acc += a.mass * psi.value(a.x);
    return acc;
}

}  // namespace zonoid::distributions
