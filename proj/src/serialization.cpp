#include "zonoid/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace zonoid::serialization {

namespace {

using distributions::PieceKind;
using distributions::SingularityFlag;
using distributions::SmoothPiece;
using nlohmann::json;
using profiles::AngleProfile;
using profiles::ProfileKind;
using profiles::ProfileRole;

constexpr int kClosureSampleCount = 65;

const char* role_name(ProfileRole role) {
    switch (role) {
        case ProfileRole::Norm: return "norm";
        case ProfileRole::Support: return "support";
        case ProfileRole::Radial: return "radial";
        case ProfileRole::Generic: return "generic";
    }
    return "generic";
}

ProfileRole role_from_name(const std::string& name) {
    if (name == "norm") return ProfileRole::Norm;
    if (name == "support") return ProfileRole::Support;
    if (name == "radial") return ProfileRole::Radial;
    if (name == "generic") return ProfileRole::Generic;
    throw SchemaError("unknown profile role: " + name);
}

json singularity_to_json(const SingularityFlag& s) {
    return json{{"exponent", s.exponent}};
}

json piece_to_json(const SmoothPiece& p) {
    json j;
    j["interval"] = {p.lo(), p.hi()};
    switch (p.kind()) {
        case PieceKind::Zero:
            j["kind"] = "zero";
            break;
        case PieceKind::Constant:
            j["kind"] = "constant";
            j["params"] = {{"value", p.params().at("value")}};
            break;
        case PieceKind::BarrelGenerating:
            j["kind"] = "barrel-generating";
            j["params"] = {{"r", p.params().at("r")}};
            break;
        case PieceKind::PolarGenerating3:
            j["kind"] = "polar-generating-3";
            j["params"] = {{"scale", p.params().at("scale")}};
            break;
        case PieceKind::Sampled: {
            j["kind"] = "sampled";
            j["samples"] = {{"x", *p.sample_nodes()}, {"value", *p.sample_values()}};
            break;
        }
        case PieceKind::Closure: {
            // lossy by construction: sample on a Chebyshev grid of the piece,
            // shrinking away from flagged singular endpoints
            j["kind"] = "sampled";
            std::vector<double> xs(kClosureSampleCount), ys(kClosureSampleCount);
            double lo = p.lo(), hi = p.hi();
            if (p.left_singularity().singular) lo += 1e-6 * (hi - lo);
            if (p.right_singularity().singular) hi -= 1e-6 * (hi - lo);
            for (int i = 0; i < kClosureSampleCount; ++i) {
                const double u =
                    0.5 * (1.0 - std::cos(std::numbers::pi * i / (kClosureSampleCount - 1)));
                xs[i] = lo + (hi - lo) * u;
                ys[i] = p.value(xs[i]);
            }
            j["samples"] = {{"x", xs}, {"value", ys}};
            break;
        }
    }
    if (p.left_singularity().singular) j["singularLeft"] = singularity_to_json(p.left_singularity());
    if (p.right_singularity().singular)
        j["singularRight"] = singularity_to_json(p.right_singularity());
    return j;
}

SmoothPiece piece_from_json(const json& j) {
    const auto interval = j.at("interval");
    const double lo = interval.at(0).get<double>();
    const double hi = interval.at(1).get<double>();
    const std::string kind = j.at("kind").get<std::string>();

    SingularityFlag left, right;
    if (j.contains("singularLeft")) left = {true, j["singularLeft"].at("exponent").get<double>()};
    if (j.contains("singularRight"))
        right = {true, j["singularRight"].at("exponent").get<double>()};

    if (kind == "zero") return SmoothPiece::zero(lo, hi);
    if (kind == "constant")
        return SmoothPiece::constant(lo, hi, j.at("params").at("value").get<double>());
    if (kind == "barrel-generating") {
        const double r = j.at("params").at("r").get<double>();
        numerics::SmoothFn fn{
            [r](double x) {
                const double A = std::sqrt(1.0 - r * r + r * r * x * x);
                return 3.0 * (1.0 - r * r) / (8.0 * std::numbers::pi * std::pow(A, 5.0));
            },
            nullptr, nullptr};
        return SmoothPiece(lo, hi, std::move(fn), PieceKind::BarrelGenerating, {{"r", r}});
    }
    if (kind == "polar-generating-3") {
        const double scale = j.at("params").at("scale").get<double>();
        numerics::SmoothFn fn{[scale](double x) {
                                  const double s = std::sqrt(2.0 * x * x - 1.0);
                                  return scale * (x * x + s) /
                                         ((1.0 + s) * (1.0 + s) * x * x * x * s);
                              },
                              nullptr, nullptr};
        return SmoothPiece(lo, hi, std::move(fn), PieceKind::PolarGenerating3,
                           {{"scale", scale}}, left, right);
    }
    if (kind == "sampled") {
        auto xs = j.at("samples").at("x").get<std::vector<double>>();
        auto ys = j.at("samples").at("value").get<std::vector<double>>();
        if (left.singular || right.singular) {
            // keep the samples but preserve the flags for quadrature
            auto interp = SmoothPiece::sampled(xs.front(), xs.back(), xs, ys);
            numerics::SmoothFn fn = interp.fn();
            return SmoothPiece(lo, hi, std::move(fn), PieceKind::Sampled, {}, left, right);
        }
        return SmoothPiece::sampled(lo, hi, std::move(xs), std::move(ys));
    }
    throw SchemaError("unknown density piece kind: " + kind);
}

}  // namespace

json profile_to_json(const AngleProfile& p, int n) {
    json j;
    j["schema"] = kProfileSchema;
    if (n > 0) j["n"] = n;
    switch (p.kind()) {
        case ProfileKind::BarrelNorm:
            j["kind"] = "barrel-norm";
            j["r"] = p.param_r();
            break;
        case ProfileKind::Support:
            j["kind"] = "support";
            j["c0"] = p.support_offset();
            j["c1"] = p.support_slope();
            break;
        case ProfileKind::PolarRadial:
            j["kind"] = "polar-radial";
            j["r"] = p.param_r();
            break;
        case ProfileKind::Constant:
            j["kind"] = "constant";
            j["value"] = p.constant_value();
            j["role"] = role_name(p.role());
            break;
        case ProfileKind::Sampled: {
            j["kind"] = "sampled";
            j["role"] = role_name(p.role());
            j["order"] = p.interpolation_order();
            json samples = json::array();
            const auto& xs = p.samples()->nodes();
            const auto& ys = p.samples()->values();
            for (size_t i = 0; i < xs.size(); ++i)
                samples.push_back({{"phi", xs[i]}, {"value", ys[i]}});
            j["samples"] = std::move(samples);
            break;
        }
    }
    return j;
}

AngleProfile profile_from_json(const json& j) {
    if (j.value("schema", kProfileSchema) != std::string(kProfileSchema))
        throw SchemaError("unexpected profile schema");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "barrel-norm") return AngleProfile::barrel_norm(j.at("r").get<double>());
    if (kind == "support") {
        if (j.contains("c0"))
            return AngleProfile::support(j.at("c0").get<double>(), j.at("c1").get<double>());
        return AngleProfile::support(1.0, j.at("r").get<double>());
    }
    if (kind == "polar-radial") return AngleProfile::polar_radial(j.at("r").get<double>());
    if (kind == "constant")
        return AngleProfile::constant(j.at("value").get<double>(),
                                      role_from_name(j.value("role", "norm")));
    if (kind == "sampled") {
        std::vector<double> xs, ys;
        for (const auto& s : j.at("samples")) {
            xs.push_back(s.at("phi").get<double>());
            ys.push_back(s.at("value").get<double>());
        }
        return AngleProfile::sampled(std::move(xs), std::move(ys),
                                     role_from_name(j.value("role", "generic")),
                                     j.value("order", 3));
    }
    throw SchemaError("unknown profile kind: " + kind);
}

json distribution_to_json(const distributions::SphericalDistributionRS& d) {
    json j;
    j["schema"] = kDistributionSchema;
    j["n"] = d.dimension();
    json density = json::array();
    for (const auto& p : d.density().pieces()) density.push_back(piece_to_json(p));
    j["density"] = std::move(density);
    json atoms = json::array();
    for (const auto& a : d.atoms()) atoms.push_back({{"x", a.x}, {"weight", a.weight}});
    j["atoms"] = std::move(atoms);
    json deltas = json::array();
    for (const auto& dd : d.delta_derivatives())
        deltas.push_back({{"x", dd.x}, {"weight", dd.weight}, {"order", dd.order}});
    j["deltaDerivatives"] = std::move(deltas);
    return j;
}

distributions::SphericalDistributionRS distribution_from_json(const json& j) {
    if (j.value("schema", kDistributionSchema) != std::string(kDistributionSchema))
        throw SchemaError("unexpected distribution schema");
    const int n = j.at("n").get<int>();
    std::vector<SmoothPiece> pieces;
    for (const auto& pj : j.at("density")) pieces.push_back(piece_from_json(pj));
    std::vector<distributions::Atom> atoms;
    for (const auto& aj : j.at("atoms"))
        atoms.push_back({aj.at("x").get<double>(), aj.at("weight").get<double>()});
    std::vector<distributions::DeltaDerivative> deltas;
    for (const auto& dj : j.at("deltaDerivatives"))
        deltas.push_back({dj.at("x").get<double>(), dj.at("weight").get<double>(),
                          dj.at("order").get<int>()});
    return distributions::SphericalDistributionRS(
        n, distributions::PiecewiseSmoothFn(std::move(pieces)), std::move(atoms),
        std::move(deltas));
}

json report_to_json(const certify::CertificateReport& report) {
    json j;
    j["schema"] = kCertificateSchema;
    j["norm"] = report.norm_kind == "barrel"
                    ? json{{"kind", "barrel"}, {"r", report.r}}
                    : json{{"kind", report.norm_kind}};
    j["n"] = report.n;
    j["grids"] = {{"latitudes", report.latitude_count}, {"directions", report.direction_count}};
    j["residualSup"] = report.residual_sup;
    j["residualL2"] = report.residual_l2;
    j["thresholds"] = {{"accept", report.thresholds.accept}, {"reject", report.thresholds.reject}};
    j["verdict"] = report.verdict;
    j["positive"] = report.positive;
    json clusters = json::array();
    for (const auto& c : report.clusters)
        clusters.push_back({{"x", c.x_center}, {"mass", c.mass}});
    j["clusters"] = std::move(clusters);
    if (std::isfinite(report.threshold_estimate))
        j["thresholdEstimate"] = report.threshold_estimate;
    return j;
}

json sweep_to_json(const certify::SweepResult& sweep, const std::string& mode, double lo,
                   double hi, double tol) {
    json j;
    j["schema"] = kSweepSchema;
    j["mode"] = mode;
    j["bracket"] = {{"lo", lo}, {"hi", hi}};
    j["tol"] = tol;
    j["thresholdEstimate"] = sweep.threshold;
    json history = json::array();
    for (const auto& step : sweep.history)
        history.push_back({{"lo", step.lo},
                           {"hi", step.hi},
                           {"mid", step.mid},
                           {"midZonoid", step.mid_zonoid}});
    j["history"] = std::move(history);
    return j;
}

std::string profile_csv(const profiles::AngleProfile& p, int points) {
    if (points < 2) throw std::invalid_argument("profile_csv: need >= 2 points");
    std::ostringstream out;
    out.precision(17);
    out << "phi,value\n";
    for (int i = 0; i < points; ++i) {
        const double phi = (std::numbers::pi / 2) * i / (points - 1);
        out << phi << ',' << p.value(phi) << '\n';
    }
    return out.str();
}

std::string distribution_csv(const distributions::SphericalDistributionRS& d, int points) {
    if (points < 2) throw std::invalid_argument("distribution_csv: need >= 2 points");
    std::ostringstream out;
    out.precision(17);
    out << "x,density\n";
    for (int i = 0; i < points; ++i) {
        double x = static_cast<double>(i) / (points - 1);
        const auto& pieces = d.density().pieces();
        const auto it = std::find_if(pieces.begin(), pieces.end(), [&](const SmoothPiece& p) {
            return x >= p.lo() && x <= p.hi();
        });
        if (it != pieces.end()) {
            if (it->left_singularity().singular && x - it->lo() < 1e-9) x = it->lo() + 1e-9;
            if (it->right_singularity().singular && it->hi() - x < 1e-9) x = it->hi() - 1e-9;
        }
        out << x << ',' << d.density().value(x) << '\n';
    }
    for (const auto& a : d.atoms()) out << "# atom," << a.x << ',' << a.weight << '\n';
    for (const auto& dd : d.delta_derivatives())
        out << "# delta-derivative," << dd.x << ',' << dd.weight << ",order=" << dd.order << '\n';
    return out.str();
}

}  // namespace zonoid::serialization
