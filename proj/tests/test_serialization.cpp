#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zonoid/serialization.hpp"
#include "zonoid/transforms.hpp"

using namespace zonoid;
using namespace zonoid::serialization;
using profiles::AngleProfile;
using profiles::ProfileRole;
constexpr double pi = std::numbers::pi;

TEST_CASE("profile json roundtrip") {
    for (const auto& p :
         {AngleProfile::barrel_norm(0.8), AngleProfile::support(1.0, 0.5),
          AngleProfile::polar_radial(1.2), AngleProfile::constant(1.0),
          AngleProfile::sampled({0.0, 0.8, pi / 2}, {1.0, 0.9, 0.5}, ProfileRole::Norm)}) {
        const auto j1 = profile_to_json(p, 4);
        const auto q = profile_from_json(j1);
        const auto j2 = profile_to_json(q, 4);
        CHECK(j1.dump() == j2.dump());  // bit-identical reserialization
        for (double phi : {0.0, 0.4, 1.1, pi / 2})
            CHECK(p.value(phi) == doctest::Approx(q.value(phi)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(profile_from_json(nlohmann::json{{"kind", "nope"}}), SchemaError);
}

TEST_CASE("distribution json roundtrip: closed forms stay closed forms") {
    const auto g = barrel::generating_distribution_closed(0.8).distribution;
    const auto j1 = distribution_to_json(g);
    CHECK(j1["schema"] == "zonoid/distribution/v1");
    CHECK(j1["density"][0]["kind"] == "zero");
    CHECK(j1["density"][1]["kind"] == "barrel-generating");
    CHECK(j1["atoms"].size() == 1);

    const auto d2 = distribution_from_json(j1);
    const auto j2 = distribution_to_json(d2);
    CHECK(j1.dump() == j2.dump());
    for (double x : {0.7, 0.85, 0.99})
        CHECK(d2.density().value(x) == doctest::Approx(g.density().value(x)).epsilon(1e-14));
    CHECK(d2.atoms()[0].weight == doctest::Approx(g.atoms()[0].weight).epsilon(1e-16));
    CHECK(d2.is_measure() == g.is_measure());
}

TEST_CASE("distribution json roundtrip: r = 1 atom-only form") {
    const auto g = barrel::generating_distribution_closed(1.0).distribution;
    const auto j = distribution_to_json(g);
    for (const auto& piece : j["density"]) CHECK(piece["kind"] == "zero");
    const double w = j["atoms"][0]["weight"].get<double>();
    CHECK(w == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-15));
    const double x = j["atoms"][0]["x"].get<double>();
    CHECK(x == doctest::Approx(0.7071067811865475).epsilon(1e-15));
}

TEST_CASE("distribution json: pipeline closures serialize as samples") {
    const auto d = transforms::generating_distribution_pipeline(AngleProfile::barrel_norm(0.6));
    const auto j1 = distribution_to_json(d);
    for (const auto& piece : j1["density"]) CHECK(piece["kind"] == "sampled");
    const auto d2 = distribution_from_json(j1);
    const auto j2 = distribution_to_json(d2);
    CHECK(j1.dump() == j2.dump());
    // sampled reconstruction stays close to the original closure
    for (double x : {0.2, 0.75, 0.9})
        CHECK(d2.density().value(x) == doctest::Approx(d.density().value(x)).epsilon(1e-5));
}

TEST_CASE("distribution json: delta derivatives and singular flags") {
    using namespace zonoid::distributions;
    SphericalDistributionRS d(4, PiecewiseSmoothFn::zero(), {{0.5, 0.25}}, {{0.5, -1.0, 1}});
    const auto j1 = distribution_to_json(d);
    CHECK(j1["deltaDerivatives"].size() == 1);
    const auto d2 = distribution_from_json(j1);
    CHECK(d2.delta_derivatives()[0].order == 1);
    CHECK_FALSE(d2.is_measure());

    const auto b3 = barrel::polar_generating_distribution_3d(1.0 / (2.0 * pi));
    const auto jb = distribution_to_json(b3);
    CHECK(jb["density"][1].contains("singularLeft"));
    const auto b3_back = distribution_from_json(jb);
    CHECK(b3_back.density().pieces()[1].left_singularity().singular);
    CHECK(distribution_to_json(b3_back).dump() == jb.dump());
}

TEST_CASE("csv exports") {
    const auto csv = profile_csv(AngleProfile::barrel_norm(1.0), 5);
    CHECK(csv.substr(0, 10) == "phi,value\n");
    CHECK(csv.find("0,1\n") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 rows

    const auto g = barrel::generating_distribution_closed(1.0).distribution;
    const auto dcsv = distribution_csv(g, 11);
    CHECK(dcsv.find("x,density") == 0);
    CHECK(dcsv.find("# atom,0.70710678118654") != std::string::npos);
}

TEST_CASE("certificate report json") {
    // minimal synthetic report shape
    certify::CertificateReport rep;
    rep.norm_kind = "barrel";
    rep.r = 0.8;
    rep.n = 4;
    rep.latitude_count = 10;
    rep.direction_count = 20;
    rep.residual_sup = 1e-5;
    rep.residual_l2 = 2e-5;
    rep.positive = true;
    rep.verdict = "zonoid-consistent";
    rep.clusters.push_back({0.62, 1.02});
    const auto j = report_to_json(rep);
    CHECK(j["schema"] == "zonoid/certificate/v1");
    CHECK(j["norm"]["r"] == 0.8);
    CHECK(j["grids"]["latitudes"] == 10);
    CHECK(j["clusters"][0]["mass"] == 1.02);
}
