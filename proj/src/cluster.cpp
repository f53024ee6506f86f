#include "polyshare/cluster.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace polyshare {

void SystemConfig::validate() const {
    if (gamma < 1) throw InvalidConfig("config: need at least one source");
    if (t < 1) throw InvalidConfig("config: t must be >= 1");
    if (k < 1) throw InvalidConfig("config: k must be >= 1");
    if (m < 1) throw InvalidConfig("config: m must be >= 1");
    if (k > m || m % k != 0) {
        throw InvalidConfig("config: k=" + std::to_string(k) + " must divide m=" + std::to_string(m));
    }
    if (n_workers + 1 < k + t) {
        throw InvalidConfig("config: N=" + std::to_string(n_workers) +
                            " < k+t-1=" + std::to_string(k + t - 1));
    }
    if (!is_prime_u64(modulus)) throw InvalidConfig("config: modulus must be prime");
    if (modulus <= n_workers) {
        throw InvalidConfig("config: modulus must exceed the worker count");
    }
}

namespace {

void validate_inputs(const SystemConfig& config, const Circuit& circuit,
                     const std::vector<Matrix>& inputs) {
    if (inputs.size() != config.gamma) {
        throw InvalidConfig("run: expected " + std::to_string(config.gamma) + " inputs, got " +
                            std::to_string(inputs.size()));
    }
    if (circuit.num_inputs > config.gamma) {
        throw UnknownInput("run: expression references X" + std::to_string(circuit.num_inputs) +
                           " but gamma=" + std::to_string(config.gamma));
    }
    for (std::size_t g = 0; g < inputs.size(); ++g) {
        if (inputs[g].rows() != config.m || inputs[g].cols() != config.m) {
            throw InvalidConfig("run: input " + std::to_string(g + 1) + " is " +
                                std::to_string(inputs[g].rows()) + "x" + std::to_string(inputs[g].cols()) +
                                ", expected " + std::to_string(config.m) + "x" + std::to_string(config.m));
        }
        for (u64 v : inputs[g].data()) {
            if (v >= config.modulus) {
                throw InvalidConfig("run: input " + std::to_string(g + 1) +
                                    " has an entry >= the modulus");
            }
        }
    }
}

}  // namespace

RunResult run_protocol(const SystemConfig& config, const Circuit& circuit,
                       const std::vector<Matrix>& inputs, u64 seed,
                       const std::vector<u64>* fixed_alphas) {
    config.validate();
    validate_inputs(config, circuit, inputs);

    FieldContext ctx(config.modulus);
    SharingParams params;
    params.t = config.t;
    params.k = config.k;
    params.n_workers = config.n_workers;
    params.alphas = fixed_alphas ? *fixed_alphas
                                 : sample_alphas(ctx, config.n_workers, config.k, config.t, seed);

    ProtocolEngine eng(ctx, params, config.m, seed);

    // Phase 1: each source (1,t,k)-shares its matrix with every worker.
    eng.transcript().note_round({0, RoundKind::sharing, 1});
    std::vector<ShareBundle> input_bundles;
    input_bundles.reserve(config.gamma);
    for (std::size_t g = 0; g < config.gamma; ++g) {
        StreamRng rng(seed, Actor::source(g).id(), 0);
        ShareBundle bundle = share_matrix(ctx, inputs[g], 1, params, rng, "X" + std::to_string(g + 1));
        for (std::size_t n = 0; n < config.n_workers; ++n) {
            eng.counters().source_to_worker += bundle.shares[n].size();
            eng.transcript().append(
                {Phase::sharing, 0, Actor::source(g), Actor::worker(n), bundle.shares[n], false});
        }
        input_bundles.push_back(std::move(bundle));
    }

    // Phase 2: gate-by-gate secure evaluation.
    ShareBundle out = evaluate_secure(eng, circuit, input_bundles);

    // Phase 3: every worker reports its output share; the master interpolates.
    const std::size_t final_round = eng.next_round();
    eng.transcript().note_round({final_round, RoundKind::output, out.basis});
    for (std::size_t n = 0; n < config.n_workers; ++n) {
        eng.counters().worker_to_master += out.shares[n].size();
        eng.transcript().append(
            {Phase::reconstruction, final_round, Actor::worker(n), Actor::master(), out.shares[n], false});
    }
    Matrix output = reconstruct(ctx, out);

    RunResult result;
    result.output = std::move(output);
    result.transcript = std::move(eng.transcript());
    result.counters = std::move(eng.counters());
    result.params = std::move(params);
    result.rounds = plan_rounds(circuit, config.k);
    result.output_bundle = std::move(out);
    return result;
}

RunResult run_protocol(const SystemConfig& config, const std::string& expression_text,
                       const std::vector<Matrix>& inputs, u64 seed) {
    config.validate();
    FieldContext ctx(config.modulus);
    const Circuit circuit = compile(parse_expression(expression_text, ctx));
    return run_protocol(config, circuit, inputs, seed);
}

AdversaryView extract_view(const RunTranscript& transcript, const std::vector<std::size_t>& subset,
                           std::size_t t, bool allow_beyond_threshold) {
    if (!allow_beyond_threshold && subset.size() + 1 > t) {
        throw SubsetTooLarge("view subset has " + std::to_string(subset.size()) +
                             " workers, privacy threshold tolerates " + std::to_string(t - 1));
    }
    std::set<std::size_t> members(subset.begin(), subset.end());
    if (members.size() != subset.size()) throw InvalidConfig("view subset has duplicate workers");

    AdversaryView view;
    view.subset = subset;
    for (const auto& rec : transcript.records()) {
        if (rec.to.kind == Actor::Kind::worker && members.count(rec.to.index)) {
            view.records.push_back(rec);
        }
    }
    return view;
}

namespace {

bool mask_window_invertible(const FieldContext& ctx, const SharingParams& params,
                            const std::vector<std::size_t>& subset) {
    const u64 k2 = static_cast<u64>(params.k) * params.k;
    std::vector<u64> alphas;
    std::vector<u64> exps;
    alphas.reserve(subset.size());
    exps.reserve(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) exps.push_back(k2 + i);
    for (std::size_t idx : subset) alphas.push_back(params.alphas[idx]);
    return is_invertible_vandermonde(ctx, alphas, exps);
}

}  // namespace

CertificateReport privacy_certificate(const FieldContext& ctx, const SharingParams& params,
                                      std::size_t exhaustive_cap, u64 sample_seed) {
    const std::size_t n = params.n_workers;
    const std::size_t r = params.t - 1;
    CertificateReport report;
    report.subset_size = r;
    if (r == 0) return report;  // no adversary tolerated, nothing to certify

    // C(n, r), saturating at the cap sentinel.
    u128 combos = 1;
    for (std::size_t i = 0; i < r; ++i) {
        combos = combos * (n - i) / (i + 1);
        if (combos > static_cast<u128>(exhaustive_cap) * 16) break;
    }
    report.exhaustive = combos <= exhaustive_cap;

    if (report.exhaustive) {
        std::vector<std::size_t> subset(r);
        for (std::size_t i = 0; i < r; ++i) subset[i] = i;
        for (;;) {
            ++report.checked;
            if (!mask_window_invertible(ctx, params, subset)) report.failures.push_back(subset);
            // next combination
            std::size_t i = r;
            while (i > 0 && subset[i - 1] == n - r + i - 1) --i;
            if (i == 0) break;
            ++subset[i - 1];
            for (std::size_t j = i; j < r; ++j) subset[j] = subset[j - 1] + 1;
        }
    } else {
        StreamRng rng(sample_seed, /*actor=*/0, /*round=*/0xce27);
        for (std::size_t s = 0; s < exhaustive_cap; ++s) {
            std::set<std::size_t> picked;
            while (picked.size() < r) picked.insert(static_cast<std::size_t>(rng.below(n)));
            std::vector<std::size_t> subset(picked.begin(), picked.end());
            ++report.checked;
            if (!mask_window_invertible(ctx, params, subset)) report.failures.push_back(subset);
        }
    }
    return report;
}

namespace {

// Flattens everything a colluding subset sees in one run into field-element
// coordinates: raw payload entries first, then whatever complete sharings the
// subset can interpolate on its own (the collusion attack; feasible only when
// |S| >= k+t-1).
void view_coordinates(const FieldContext& ctx, const RunResult& run,
                      const std::vector<std::size_t>& subset, std::vector<u64>* raw,
                      std::vector<u64>* derived) {
    AdversaryView view = extract_view(run.transcript, subset, run.params.t, true);
    for (const auto& rec : view.records) {
        raw->insert(raw->end(), rec.payload.data().begin(), rec.payload.data().end());
    }

    const std::size_t need = run.params.k + run.params.t - 1;
    if (subset.size() < need) return;

    std::map<std::size_t, std::size_t> round_basis;
    for (const auto& info : run.transcript.rounds()) round_basis[info.round] = info.basis;

    std::vector<u64> sub_alphas;
    for (std::size_t idx : subset) sub_alphas.push_back(run.params.alphas[idx]);

    // Group the view by sender within each round; each group is a set of
    // evaluations of one sharing polynomial at the subset's points.
    std::map<std::pair<std::size_t, u64>, std::vector<Matrix>> groups;
    for (const auto& rec : view.records) {
        groups[{rec.round, rec.from.id()}].push_back(rec.payload);
    }
    for (auto& [key, shares] : groups) {
        if (shares.size() < need) continue;
        const std::size_t basis = round_basis.count(key.first) ? round_basis[key.first] : 1;
        Matrix recovered = reconstruct_from(ctx, sub_alphas, shares, basis, run.params.t, run.params.k);
        derived->insert(derived->end(), recovered.data().begin(), recovered.data().end());
    }
}

double tv_distance(const std::vector<u64>& a, const std::vector<u64>& b, std::size_t trials) {
    double acc = 0.0;
    for (std::size_t v = 0; v < a.size(); ++v) {
        const double da = static_cast<double>(a[v]) / trials;
        const double db = static_cast<double>(b[v]) / trials;
        acc += da > db ? da - db : db - da;
    }
    return acc / 2.0;
}

double chi_square(const std::vector<u64>& counts, std::size_t trials) {
    const double expected = static_cast<double>(trials) / counts.size();
    double acc = 0.0;
    for (u64 c : counts) {
        const double d = static_cast<double>(c) - expected;
        acc += d * d / expected;
    }
    return acc;
}

}  // namespace

AuditReport distribution_audit(const SystemConfig& config, const Circuit& circuit,
                               const std::vector<Matrix>& inputs_a,
                               const std::vector<Matrix>& inputs_b,
                               const std::vector<std::size_t>& subset, std::size_t trials, u64 seed) {
    config.validate();
    if (config.modulus > 17 || config.m > 2 || config.k > 2) {
        throw ParametersTooLarge("distribution audit needs p <= 17, m <= 2, k <= 2 for tractable histograms");
    }
    if (subset.size() > config.t) {
        throw SubsetTooLarge("audit subset larger than t=" + std::to_string(config.t));
    }
    for (std::size_t idx : subset) {
        if (idx >= config.n_workers) throw IndexOutOfRange("audit subset references missing worker");
    }
    if (trials == 0) throw InvalidConfig("audit needs at least one trial");

    AuditReport report;
    report.trials = trials;
    report.beyond_threshold = subset.size() + 1 > config.t;
    if (subset.empty()) return report;

    FieldContext ctx(config.modulus);
    const std::vector<u64> alphas = sample_alphas(ctx, config.n_workers, config.k, config.t, seed);
    const std::size_t p = static_cast<std::size_t>(config.modulus);

    // hist[input][coordinate][value]
    std::vector<std::vector<std::vector<u64>>> raw_hist(2), derived_hist(2);

    for (std::size_t which = 0; which < 2; ++which) {
        const auto& inputs = which == 0 ? inputs_a : inputs_b;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const u64 trial_seed =
                detail::splitmix64(detail::splitmix64(seed ^ (0x9e37u + which)) + trial);
            RunResult run = run_protocol(config, circuit, inputs, trial_seed, &alphas);

            std::vector<u64> raw, derived;
            view_coordinates(ctx, run, subset, &raw, &derived);
            if (raw_hist[which].empty()) {
                raw_hist[which].assign(raw.size(), std::vector<u64>(p, 0));
                derived_hist[which].assign(derived.size(), std::vector<u64>(p, 0));
            }
            if (raw.size() != raw_hist[which].size() || derived.size() != derived_hist[which].size()) {
                throw Error("audit: view shape varied across trials");
            }
            for (std::size_t c = 0; c < raw.size(); ++c) ++raw_hist[which][c][raw[c]];
            for (std::size_t c = 0; c < derived.size(); ++c) ++derived_hist[which][c][derived[c]];
        }
    }

    if (raw_hist[0].size() != raw_hist[1].size() || derived_hist[0].size() != derived_hist[1].size()) {
        throw Error("audit: view shape varied across input tuples");
    }
    report.raw_coordinates = raw_hist[0].size();
    report.derived_coordinates = derived_hist[0].size();
    for (std::size_t c = 0; c < raw_hist[0].size(); ++c) {
        report.max_tv_raw = std::max(report.max_tv_raw, tv_distance(raw_hist[0][c], raw_hist[1][c], trials));
        report.max_chi_square = std::max(report.max_chi_square, chi_square(raw_hist[0][c], trials));
        report.max_chi_square = std::max(report.max_chi_square, chi_square(raw_hist[1][c], trials));
    }
    for (std::size_t c = 0; c < derived_hist[0].size(); ++c) {
        report.max_tv_derived =
            std::max(report.max_tv_derived, tv_distance(derived_hist[0][c], derived_hist[1][c], trials));
    }
    return report;
}

}  // namespace polyshare
