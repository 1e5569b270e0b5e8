// Command-line front end: profile tables and plots, generating distributions,
// numerical zonoid certification, threshold sweeps, and the verification
// suite. Exit codes: 0 success, 2 argument validation, 3 numerical
// non-convergence or failed bracket, 4 verification-suite failure.
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "zonoid/acceptance.hpp"
#include "zonoid/serialization.hpp"
#include "zonoid/svg.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

using zonoid::profiles::AngleProfile;
using zonoid::profiles::BarrelParams;

struct RunConfig {
    int n = 4;
    double r = 1.0;
    int points = 181;
    std::string format = "csv";
    std::string output;  // empty -> stdout
    std::string generate_mode = "closed";
    std::string sweep_mode = "closed-form";
    std::string norm = "barrel";
    std::string suite = "all";
    int latitudes = zonoid::certify::kDefaultLatitudes;
    int directions = zonoid::certify::kDefaultDirections;
    double lo = 0.5, hi = 1.5;
    double tol = 0.0;
    unsigned seed = zonoid::certify::kDefaultSeed;
};

// --output is taken relative to ZONOID_OUTPUT_DIR when that is set
std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_absolute()) return p;
    if (const char* dir = std::getenv("ZONOID_OUTPUT_DIR")) return std::filesystem::path(dir) / p;
    return p;
}

void emit(const RunConfig& cfg, const std::string& payload) {
    if (cfg.output.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    const auto path = resolve_output(cfg.output);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    out << payload;
}

std::string profile_table_csv(const RunConfig& cfg) {
    const BarrelParams params(cfg.n, cfg.r);
    std::ostringstream out;
    out.precision(17);
    out << "phi,norm,support,polar_radial\n";
    for (int i = 0; i < cfg.points; ++i) {
        const double phi = (kPi / 2) * i / (cfg.points - 1);
        out << phi << ',' << zonoid::profiles::barrel_norm_profile(params, phi) << ','
            << zonoid::profiles::barrel_support_profile(params, phi) << ','
            << zonoid::profiles::polar_radial_profile(params, phi) << '\n';
    }
    return out.str();
}

nlohmann::json profile_table_json(const RunConfig& cfg) {
    const BarrelParams params(cfg.n, cfg.r);
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < cfg.points; ++i) {
        const double phi = (kPi / 2) * i / (cfg.points - 1);
        rows.push_back({{"phi", phi},
                        {"norm", zonoid::profiles::barrel_norm_profile(params, phi)},
                        {"support", zonoid::profiles::barrel_support_profile(params, phi)},
                        {"polarRadial", zonoid::profiles::polar_radial_profile(params, phi)}});
    }
    return nlohmann::json{{"schema", "zonoid/profile-table/v1"},
                          {"n", cfg.n},
                          {"r", cfg.r},
                          {"rows", rows}};
}

// meridian sections of the body and its polar, drawn as closed curves
std::string profile_svg(const RunConfig& cfg) {
    const BarrelParams params(cfg.n, cfg.r);
    auto section = [&](bool polar) {
        std::vector<std::pair<double, double>> pts;
        const int m = 720;
        for (int i = 0; i <= m; ++i) {
            const double theta = 2.0 * kPi * i / m;  // full meridian turn
            double phi = std::abs(std::remainder(theta, kPi));
            if (phi > kPi / 2) phi = kPi - phi;
            const double rho = polar
                                   ? zonoid::profiles::polar_radial_profile(params, phi)
                                   : 1.0 / zonoid::profiles::barrel_norm_profile(params, phi);
            pts.emplace_back(rho * std::sin(theta), rho * std::cos(theta));
        }
        return pts;
    };
    const double extent = 1.0 + cfg.r + 0.2;
    zonoid::svg::Canvas canvas(-extent, extent, -extent, extent, 640, 640);
    canvas.polyline(section(false), "#1f77b4", "body section");
    canvas.polyline(section(true), "#d62728", "polar section");
    return canvas.str();
}

std::string distribution_svg(const zonoid::distributions::SphericalDistributionRS& d) {
    double ymax = 0.1;
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= 400; ++i) {
        const double x = i / 400.0;
        double v = 0.0;
        try {
            v = d.density().value(x);
        } catch (const std::exception&) {
            v = 0.0;
        }
        if (std::isfinite(v)) {
            pts.emplace_back(x, v);
            ymax = std::max(ymax, std::abs(v));
        }
    }
    for (const auto& a : d.atoms()) ymax = std::max(ymax, a.weight);
    zonoid::svg::Canvas canvas(0.0, 1.0, std::min(0.0, -0.1 * ymax), 1.1 * ymax);
    canvas.polyline(pts, "#1f77b4", "density");
    for (const auto& a : d.atoms()) {
        std::ostringstream label;
        label.precision(6);
        label << "atom " << a.weight;
        canvas.arrow(a.x, std::min(a.weight, 1.05 * ymax), "#d62728", label.str());
    }
    return canvas.str();
}

int cmd_profile(const RunConfig& cfg) {
    if (cfg.format == "csv")
        emit(cfg, profile_table_csv(cfg));
    else if (cfg.format == "json")
        emit(cfg, profile_table_json(cfg).dump(2) + "\n");
    else
        emit(cfg, profile_svg(cfg));
    return 0;
}

int cmd_generate(const RunConfig& cfg) {
    using zonoid::serialization::distribution_to_json;
    nlohmann::json j;
    if (cfg.n == 3) {
        if (cfg.r != 1.0)
            throw CLI::ValidationError("generate",
                                       "the n=3 closed form is available at r = 1 only");
        // fit the free scale against the equator value of the norm
        const auto unscaled = zonoid::barrel::polar_generating_distribution_3d(1.0);
        const zonoid::distributions::LatitudeMeasure mu(unscaled);
        const double scale = 0.5 / zonoid::transforms::cosine_forward(mu, 0.0);
        const auto d = zonoid::barrel::polar_generating_distribution_3d(scale);
        j = distribution_to_json(d);
        j["isMeasure"] = d.is_measure();
        j["fittedScale"] = scale;
        emit(cfg, j.dump(2) + "\n");
        return 0;
    }

    const std::string mode = cfg.generate_mode;
    auto attach = [](const zonoid::distributions::SphericalDistributionRS& d) {
        auto jd = distribution_to_json(d);
        jd["isMeasure"] = d.is_measure();
        return jd;
    };
    const auto closed = zonoid::barrel::generating_distribution_closed(cfg.r);
    if (mode == "closed") {
        j = attach(closed.distribution);
    } else {
        const auto piped = zonoid::transforms::generating_distribution_pipeline(
            AngleProfile::barrel_norm(cfg.r));
        if (mode == "pipeline")
            j = attach(piped);
        else
            j = nlohmann::json{{"closedForm", attach(closed.distribution)},
                               {"pipeline", attach(piped)}};
    }
    if (cfg.format == "csv")
        emit(cfg, zonoid::serialization::distribution_csv(closed.distribution, cfg.points));
    else if (cfg.format == "svg")
        emit(cfg, distribution_svg(closed.distribution));
    else
        emit(cfg, j.dump(2) + "\n");
    return 0;
}

int cmd_certify(const RunConfig& cfg) {
    const AngleProfile f = cfg.norm == "euclidean" ? AngleProfile::constant(1.0)
                                                   : AngleProfile::barrel_norm(cfg.r);
    const auto report = zonoid::certify::nnls_certify(f, 4, cfg.latitudes, cfg.directions);

    // human-readable summary alongside the JSON payload
    std::ostringstream table;
    table.precision(6);
    table << "norm            " << report.norm_kind;
    if (report.norm_kind == "barrel") table << " (r = " << report.r << ")";
    table << "\ngrids           " << report.latitude_count << " latitudes x "
          << report.direction_count << " directions\n"
          << "residual (sup)  " << report.residual_sup << '\n'
          << "residual (l2)   " << report.residual_l2 << '\n'
          << "verdict         " << report.verdict << '\n';
    if (!report.clusters.empty()) {
        table << "mass clusters   x-center    mass\n";
        for (const auto& c : report.clusters)
            table << "                " << c.x_center << "    " << c.mass << '\n';
    }
    std::cerr << table.str();

    emit(cfg, zonoid::serialization::report_to_json(report).dump(2) + "\n");
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    const auto mode = cfg.sweep_mode == "nnls" ? zonoid::certify::SweepMode::Nnls
                                               : zonoid::certify::SweepMode::ClosedForm;
    const double tol = cfg.tol > 0.0
                           ? cfg.tol
                           : (mode == zonoid::certify::SweepMode::Nnls ? 0.02 : 1e-6);
    const auto sweep =
        zonoid::certify::threshold_sweep(cfg.lo, cfg.hi, tol, mode, cfg.latitudes, cfg.directions);
    std::cerr << "critical radius estimate " << sweep.threshold << " after "
              << sweep.history.size() << " bisections\n";
    emit(cfg, zonoid::serialization::sweep_to_json(
                  sweep, mode == zonoid::certify::SweepMode::Nnls ? "nnls" : "closed-form",
                  cfg.lo, cfg.hi, tol)
                      .dump(2) +
                  "\n");
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const auto results = zonoid::acceptance::run_suite(cfg.suite, cfg.seed);
    bool all_pass = true;
    nlohmann::json checks = nlohmann::json::array();
    const int total = static_cast<int>(results.size());
    for (int i = 0; i < total; ++i) {
        std::cout << zonoid::acceptance::format_line(results[i], i + 1, total) << '\n';
        all_pass = all_pass && results[i].pass;
        checks.push_back({{"name", results[i].name},
                          {"pass", results[i].pass},
                          {"measured", results[i].measured},
                          {"tolerance", results[i].tolerance},
                          {"details", results[i].details}});
    }
    if (!cfg.output.empty())
        emit(cfg, nlohmann::json{{"schema", "zonoid/verify/v1"}, {"allPass", all_pass},
                                 {"checks", checks}}
                      .dump(2) +
                      "\n");
    return all_pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"barrel zonoids, their polars, and cosine-transform certification"};
    app.require_subcommand(1);

    // one config instance per subcommand: the bound defaults stay independent
    RunConfig profile_cfg, generate_cfg, certify_cfg, sweep_cfg, verify_cfg;
    profile_cfg.n = 3;
    const auto positive = CLI::PositiveNumber;

    auto* profile = app.add_subcommand("profile", "norm/support/polar tables and section plots");
    profile->add_option("--n", profile_cfg.n, "dimension")->capture_default_str()
        ->check(CLI::Range(3, 16));
    profile->add_option("--r", profile_cfg.r, "summand radius")->capture_default_str()
        ->check(positive);
    profile->add_option("--points", profile_cfg.points, "grid size")->capture_default_str()
        ->check(CLI::Range(2, 1000000));
    profile->add_option("--format", profile_cfg.format)->capture_default_str()
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    profile->add_option("--output,-o", profile_cfg.output, "output path (stdout when omitted)");

    generate_cfg.format = "json";
    generate_cfg.points = 201;
    auto* generate = app.add_subcommand("generate", "generating distribution of the barrel");
    generate->add_option("--n", generate_cfg.n)->capture_default_str()
        ->check(CLI::IsMember({3, 4}));
    generate->add_option("--r", generate_cfg.r)->capture_default_str()->check(positive);
    generate->add_option("--mode", generate_cfg.generate_mode, "closed | pipeline | both")
        ->capture_default_str()->check(CLI::IsMember({"closed", "pipeline", "both"}));
    generate->add_option("--points", generate_cfg.points)->capture_default_str();
    generate->add_option("--format", generate_cfg.format)->capture_default_str()
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    generate->add_option("--output,-o", generate_cfg.output);

    auto* certify = app.add_subcommand("certify", "nonnegative least-squares zonoid certificate");
    certify->add_option("--r", certify_cfg.r)->capture_default_str()->check(positive);
    certify->add_option("--norm", certify_cfg.norm)->capture_default_str()
        ->check(CLI::IsMember({"barrel", "euclidean"}));
    certify->add_option("--lat", certify_cfg.latitudes)->capture_default_str()
        ->check(CLI::Range(8, 2000));
    certify->add_option("--dirs", certify_cfg.directions)->capture_default_str()
        ->check(CLI::Range(8, 4000));
    certify->add_option("--output,-o", certify_cfg.output);

    auto* sweep = app.add_subcommand("sweep", "bisection for the critical radius");
    sweep->add_option("--mode", sweep_cfg.sweep_mode, "closed-form | nnls")
        ->capture_default_str()->check(CLI::IsMember({"closed-form", "nnls"}));
    sweep->add_option("--lo", sweep_cfg.lo)->capture_default_str()->check(positive);
    sweep->add_option("--hi", sweep_cfg.hi)->capture_default_str()->check(positive);
    sweep->add_option("--tol", sweep_cfg.tol, "bracket tolerance (mode-specific default)");
    sweep->add_option("--lat", sweep_cfg.latitudes)->capture_default_str();
    sweep->add_option("--dirs", sweep_cfg.directions)->capture_default_str();
    sweep->add_option("--output,-o", sweep_cfg.output);

    auto* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_option("--suite", verify_cfg.suite, "suite name or 'all'")
        ->capture_default_str();
    verify->add_option("--seed", verify_cfg.seed, "seed for the randomized structure checks")
        ->capture_default_str();
    verify->add_option("--output,-o", verify_cfg.output, "also write a JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (profile->parsed()) return cmd_profile(profile_cfg);
        if (generate->parsed()) return cmd_generate(generate_cfg);
        if (certify->parsed()) return cmd_certify(certify_cfg);
        if (sweep->parsed()) return cmd_sweep(sweep_cfg);
        if (verify->parsed()) return cmd_verify(verify_cfg);
    } catch (const zonoid::numerics::QuadratureError& e) {
        std::cerr << "numerical non-convergence: " << e.what() << '\n';
        return 3;
    } catch (const zonoid::certify::BracketError& e) {
        std::cerr << "sweep bracket error: " << e.what() << '\n';
        return 3;
    } catch (const zonoid::numerics::NnlsError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return 3;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "invalid arguments: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid arguments: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
