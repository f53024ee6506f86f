#pragma once

#include <string>

#include <json.hpp>

#include "polyshare/cluster.hpp"

namespace polyshare {

using json = nlohmann::json;

// Matrix wire format: {"rows": m, "cols": m, "modulus": p, "data": [...]}.
// Entries must be integers in [0, p).
json matrix_to_json(const Matrix& m, u64 modulus);
Matrix matrix_from_json(const json& j, u64* modulus_out = nullptr);

json bundle_to_json(const ShareBundle& b, u64 modulus);
ShareBundle bundle_from_json(const json& j);

json counters_to_json(const TrafficCounters& c);
json transcript_to_json(const RunTranscript& t);
json certificate_to_json(const CertificateReport& r);
json audit_to_json(const AuditReport& r);
json config_to_json(const SystemConfig& c);
json circuit_to_json(const Circuit& c);

json run_report(const SystemConfig& config, u64 seed, const RunResult& result,
                const CertificateReport* certificate = nullptr, const AuditReport* audit = nullptr);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace polyshare
