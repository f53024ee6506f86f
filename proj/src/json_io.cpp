#include "polyshare/json_io.hpp"

#include <fstream>

namespace polyshare {

json matrix_to_json(const Matrix& m, u64 modulus) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["modulus"] = modulus;
    j["data"] = m.data();
    return j;
}

Matrix matrix_from_json(const json& j, u64* modulus_out) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("modulus") ||
        !j.contains("data")) {
        throw InvalidConfig("matrix json: need fields rows, cols, modulus, data");
    }
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned() ||
        !j["modulus"].is_number_unsigned() || !j["data"].is_array()) {
        throw InvalidConfig("matrix json: malformed field types");
    }
    const std::size_t rows = j["rows"].get<std::size_t>();
    const std::size_t cols = j["cols"].get<std::size_t>();
    const u64 modulus = j["modulus"].get<u64>();
    if (j["data"].size() != rows * cols) {
        throw InvalidConfig("matrix json: data length " + std::to_string(j["data"].size()) +
                            " != rows*cols=" + std::to_string(rows * cols));
    }
    Matrix m(rows, cols);
    std::size_t i = 0;
    for (const auto& v : j["data"]) {
        if (!v.is_number_unsigned() || v.get<u64>() >= modulus) {
            throw InvalidConfig("matrix json: entry " + std::to_string(i) +
                                " is not an integer in [0, modulus)");
        }
        m.data()[i++] = v.get<u64>();
    }
    if (modulus_out) *modulus_out = modulus;
    return m;
}

json bundle_to_json(const ShareBundle& b, u64 modulus) {
    json j;
    j["label"] = b.label;
    j["basis"] = b.basis;
    j["transposed"] = b.transposed;
    j["params"] = {{"t", b.params.t},
                   {"k", b.params.k},
                   {"workers", b.params.n_workers},
                   {"alphas", b.params.alphas}};
    j["modulus"] = modulus;
    j["shares"] = json::array();
    for (const auto& s : b.shares) j["shares"].push_back(matrix_to_json(s, modulus));
    return j;
}

ShareBundle bundle_from_json(const json& j) {
    ShareBundle b;
    b.label = j.at("label").get<std::string>();
    b.basis = j.at("basis").get<std::size_t>();
    b.transposed = j.value("transposed", false);
    const auto& p = j.at("params");
    b.params.t = p.at("t").get<std::size_t>();
    b.params.k = p.at("k").get<std::size_t>();
    b.params.n_workers = p.at("workers").get<std::size_t>();
    b.params.alphas = p.at("alphas").get<std::vector<u64>>();
    for (const auto& s : j.at("shares")) b.shares.push_back(matrix_from_json(s));
    if (b.shares.size() != b.params.n_workers) {
        throw InvalidConfig("bundle json: share count != worker count");
    }
    for (const auto& s : b.shares) {
        if (s.rows() != b.shares.front().rows() || s.cols() != b.shares.front().cols()) {
            throw InvalidConfig("bundle json: share dimensions differ across workers");
        }
    }
    return b;
}

json counters_to_json(const TrafficCounters& c) {
    return {{"source_to_worker", c.source_to_worker},
            {"inter_worker", c.inter_worker},
            {"self_worker", c.self_worker},
            {"worker_to_master", c.worker_to_master},
            {"per_round_inter_worker", c.per_round_inter_worker},
            {"worker_mults", c.worker_mults}};
}

json transcript_to_json(const RunTranscript& t) {
    json records = json::array();
    for (const auto& r : t.records()) {
        records.push_back({{"phase", to_string(r.phase)},
                           {"round", r.round},
                           {"from", to_string(r.from)},
                           {"to", to_string(r.to)},
                           {"local", r.local},
                           {"payload", r.payload.data()}});
    }
    json rounds = json::array();
    for (const auto& info : t.rounds()) {
        const char* kind = nullptr;
        switch (info.kind) {
            case RoundKind::sharing: kind = "sharing"; break;
            case RoundKind::reshare_multiply: kind = "multiply"; break;
            case RoundKind::reshare_transpose: kind = "transpose"; break;
            case RoundKind::reshare_change_basis: kind = "change-basis"; break;
            case RoundKind::output: kind = "output"; break;
        }
        rounds.push_back({{"round", info.round}, {"kind", kind}, {"basis", info.basis}});
    }
    return {{"records", records}, {"rounds", rounds}};
}

json certificate_to_json(const CertificateReport& r) {
    return {{"subset_size", r.subset_size},
            {"checked", r.checked},
            {"exhaustive", r.exhaustive},
            {"passed", r.passed()},
            {"failures", r.failures}};
}

json audit_to_json(const AuditReport& r) {
    return {{"trials", r.trials},
            {"raw_coordinates", r.raw_coordinates},
            {"derived_coordinates", r.derived_coordinates},
            {"max_tv_raw", r.max_tv_raw},
            {"max_tv_derived", r.max_tv_derived},
            {"max_tv", r.max_tv()},
            {"max_chi_square", r.max_chi_square},
            {"beyond_threshold", r.beyond_threshold}};
}

json config_to_json(const SystemConfig& c) {
    return {{"gamma", c.gamma}, {"workers", c.n_workers}, {"t", c.t},
            {"k", c.k},         {"m", c.m},               {"modulus", c.modulus}};
}

json circuit_to_json(const Circuit& c) {
    json gates = json::array();
    auto wire = [](WireRef r) -> json {
        return {{"kind", r.is_input ? "input" : "gate"}, {"index", r.idx}};
    };
    for (const auto& g : c.gates) {
        json jg;
        switch (g.kind) {
            case Gate::Kind::add:
                jg = {{"op", "add"}, {"a", wire(g.a)}, {"b", wire(g.b)}};
                break;
            case Gate::Kind::scalar_mul:
                jg = {{"op", "scalar-mul"}, {"a", wire(g.a)}, {"scalar", g.scalar}};
                break;
            case Gate::Kind::matmul:
                jg = {{"op", "matmul"}, {"a", wire(g.a)}, {"b", wire(g.b)}};
                break;
            case Gate::Kind::transpose:
                jg = {{"op", "transpose"}, {"a", wire(g.a)}};
                break;
        }
        gates.push_back(jg);
    }
    return {{"gates", gates}, {"output", {{"kind", c.output.is_input ? "input" : "gate"}, {"index", c.output.idx}}},
            {"inputs", c.num_inputs}};
}

json run_report(const SystemConfig& config, u64 seed, const RunResult& result,
                const CertificateReport* certificate, const AuditReport* audit) {
    json j;
    j["config"] = config_to_json(config);
    j["seed"] = seed;
    j["output"] = matrix_to_json(result.output, config.modulus);
    j["counters"] = counters_to_json(result.counters);
    j["alphas"] = result.params.alphas;
    if (certificate) j["certificate"] = certificate_to_json(*certificate);
    if (audit) j["audit"] = audit_to_json(*audit);
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidConfig("malformed json in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InvalidConfig("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace polyshare
