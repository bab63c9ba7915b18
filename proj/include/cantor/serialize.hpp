#ifndef CANTOR_SERIALIZE_HPP
#define CANTOR_SERIALIZE_HPP

#include "cantor/coverage.hpp"
#include "cantor/dust.hpp"
#include "cantor/padic.hpp"
#include "cantor/powersum.hpp"

#include <json.hpp>

#include <string>

namespace cantor {

using Json = nlohmann::ordered_json;  // fixed field order keeps output byte-stable

inline constexpr const char* kSchemaVersion = "1";

/// Self-contained certificate files: {schema_version, kind, replay_status,
/// payload}. Rationals serialize as "num/den" strings; no floating point.
Json certificate_file(const std::string& kind, Json payload, bool verified);

Json to_json(const DecompositionCertificate& cert);
Json to_json(const DustCertificate& cert);
Json to_json(const PadicCertificate& cert);
Json to_json(const CoverageSet& cov, const GapReport& gaps);

DecompositionCertificate real_certificate_from_json(const Json& payload);
DustCertificate dust_certificate_from_json(const Json& payload);
PadicCertificate padic_certificate_from_json(const Json& payload);

struct VerifyResult {
    bool ok;
    std::string kind;
    std::string message;
};

/// Replays a certificate file from its payload alone. Unknown schema
/// versions and kinds are rejected, never guessed at.
VerifyResult verify_certificate_file(const Json& file);

}  // namespace cantor

#endif
