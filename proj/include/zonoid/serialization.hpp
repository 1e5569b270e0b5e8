#pragma once

#include <string>

#include <json.hpp>

#include "zonoid/certify.hpp"
#include "zonoid/distributions.hpp"
#include "zonoid/profiles.hpp"

namespace zonoid::serialization {

inline constexpr const char* kProfileSchema = "zonoid/profile/v1";
inline constexpr const char* kDistributionSchema = "zonoid/distribution/v1";
inline constexpr const char* kCertificateSchema = "zonoid/certificate/v1";
inline constexpr const char* kSweepSchema = "zonoid/sweep/v1";

class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

nlohmann::json profile_to_json(const profiles::AngleProfile& p, int n = 0);
profiles::AngleProfile profile_from_json(const nlohmann::json& j);

/// Distribution interchange format:
/// {schema, n, density: [{interval, kind, params|samples}], atoms, deltaDerivatives}.
/// Closure pieces serialize as Chebyshev samples; every other kind round-trips
/// bit-identically.
nlohmann::json distribution_to_json(const distributions::SphericalDistributionRS& d);
distributions::SphericalDistributionRS distribution_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const certify::CertificateReport& report);
nlohmann::json sweep_to_json(const certify::SweepResult& sweep, const std::string& mode,
                             double lo, double hi, double tol);

/// Two-column CSV (phi,value) of a profile on a uniform angle grid.
std::string profile_csv(const profiles::AngleProfile& p, int points);

/// Density table (x,density) with atom and delta-derivative footer rows.
std::string distribution_csv(const distributions::SphericalDistributionRS& d, int points);

}  // namespace zonoid::serialization
