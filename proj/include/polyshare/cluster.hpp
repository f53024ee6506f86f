#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polyshare/circuit.hpp"
#include "polyshare/field.hpp"
#include "polyshare/procedures.hpp"
#include "polyshare/transcript.hpp"

namespace polyshare {

// The simulated topology: Gamma sources, N workers, one master, ideal links.
struct SystemConfig {
    std::size_t gamma = 1;
    std::size_t n_workers = 1;
    std::size_t t = 1;
    std::size_t k = 1;
    std::size_t m = 1;
    u64 modulus = kDefaultModulus;
    u64 seed = 0;

    void validate() const;
};

struct RunResult {
    Matrix output;
    RunTranscript transcript;
    TrafficCounters counters;
    SharingParams params;
    RoundBudget rounds;
    ShareBundle output_bundle;  // kept for the output-form and privacy-proxy checks
};

// Full three-phase protocol run: sharing, gate-by-gate secure evaluation,
// reconstruction at the master.
RunResult run_protocol(const SystemConfig& config, const Circuit& circuit,
                       const std::vector<Matrix>& inputs, u64 seed,
                       const std::vector<u64>* fixed_alphas = nullptr);

RunResult run_protocol(const SystemConfig& config, const std::string& expression_text,
                       const std::vector<Matrix>& inputs, u64 seed);

// Everything a colluding subset S observes: all records delivered to S,
// initial shares included.
struct AdversaryView {
    std::vector<std::size_t> subset;       // 0-based worker indices
    std::vector<MessageRecord> records;    // transcript order
};

AdversaryView extract_view(const RunTranscript& transcript, const std::vector<std::size_t>& subset,
                           std::size_t t, bool allow_beyond_threshold = false);

// Mask-window invertibility certificate: for each subset S, |S| = t-1, the
// matrix [alpha_i^{k^2+j}] must be invertible. Exhaustive while the subset
// count stays under `exhaustive_cap`, sampled beyond that.
struct CertificateReport {
    std::size_t subset_size = 0;
    std::size_t checked = 0;
    bool exhaustive = true;
    std::vector<std::vector<std::size_t>> failures;

    bool passed() const { return failures.empty(); }
};

CertificateReport privacy_certificate(const FieldContext& ctx, const SharingParams& params,
                                      std::size_t exhaustive_cap = 100000, u64 sample_seed = 1);

// Distribution audit at desk scale: runs the protocol `trials` times per
// input tuple with independent mask seeds, histograms every view coordinate
// (raw payload entries plus whatever the subset can reconstruct outright),
// and reports the worst per-coordinate total-variation distance between the
// two input choices.
struct AuditReport {
    std::size_t trials = 0;
    std::size_t raw_coordinates = 0;
    std::size_t derived_coordinates = 0;  // from the subset's reconstruction attack
    double max_tv_raw = 0.0;
    double max_tv_derived = 0.0;
    double max_chi_square = 0.0;  // vs uniform, worst coordinate over both inputs
    bool beyond_threshold = false;  // |S| > t-1: leakage is expected

    double max_tv() const { return max_tv_raw > max_tv_derived ? max_tv_raw : max_tv_derived; }
};

AuditReport distribution_audit(const SystemConfig& config, const Circuit& circuit,
                               const std::vector<Matrix>& inputs_a,
                               const std::vector<Matrix>& inputs_b,
                               const std::vector<std::size_t>& subset, std::size_t trials, u64 seed);

}  // namespace polyshare
