#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polyshare/analytics.hpp"
#include "polyshare/json_io.hpp"

namespace ps = polyshare;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitProtocol = 2;
constexpr int kExitAudit = 3;

ps::u64 resolve_seed(const CLI::Option* seed_opt, ps::u64 seed_flag) {
    if (seed_opt->count() > 0) return seed_flag;
    if (const char* env = std::getenv("POLYSHARE_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ps::InvalidConfig("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_matrix(const ps::Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            std::cout << (c ? " " : "") << m.at(r, c);
        }
        std::cout << "\n";
    }
}

std::vector<ps::Matrix> load_inputs(const std::vector<std::string>& paths, ps::u64 modulus) {
    std::vector<ps::Matrix> inputs;
    for (const auto& path : paths) {
        ps::u64 file_modulus = 0;
        inputs.push_back(ps::matrix_from_json(ps::load_json_file(path), &file_modulus));
        if (file_modulus != modulus) {
            throw ps::InvalidConfig("input " + path + " uses modulus " + std::to_string(file_modulus) +
                                    ", run uses " + std::to_string(modulus));
        }
    }
    return inputs;
}

struct ConfigFlags {
    std::size_t gamma = 1;
    std::size_t workers = 0;
    std::size_t t = 2;
    std::size_t k = 1;
    std::size_t m = 1;
    ps::u64 modulus = ps::kDefaultModulus;
    ps::u64 seed = 0;
    CLI::Option* seed_opt = nullptr;

    void attach(CLI::App* cmd, bool with_workers = true) {
        cmd->add_option("--gamma", gamma, "number of source nodes");
        if (with_workers) cmd->add_option("--workers", workers, "number of workers N");
        cmd->add_option("-t", t, "privacy threshold t");
        cmd->add_option("-k", k, "storage partition count k");
        cmd->add_option("-m", m, "matrix dimension m (inputs are m x m)");
        cmd->add_option("--modulus", modulus, "prime field modulus");
        seed_opt = cmd->add_option("--seed", seed, "run seed (falls back to POLYSHARE_SEED)");
    }

    ps::SystemConfig to_config() const {
        return {gamma, workers, t, k, m, modulus, seed};
    }
};

int protocol_exit(const ps::Error& e) {
    std::cerr << "protocol error: " << e.what() << "\n";
    return kExitProtocol;
}

int config_exit(const ps::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
}

int cmd_run(const ConfigFlags& flags, const std::string& expr_path,
            const std::vector<std::string>& input_paths, const std::string& out_path,
            const std::string& dump_circuit_path) {
    ps::SystemConfig config = flags.to_config();
    const ps::u64 seed = config.seed;
    try {
        config.validate();
        ps::FieldContext ctx(config.modulus);
        const ps::Circuit circuit = ps::compile(ps::parse_expression(read_text_file(expr_path), ctx));
        if (!dump_circuit_path.empty()) ps::save_json_file(dump_circuit_path, ps::circuit_to_json(circuit));
        const std::vector<ps::Matrix> inputs = load_inputs(input_paths, config.modulus);

        ps::RunResult result;
        try {
            result = ps::run_protocol(config, circuit, inputs, seed);
        } catch (const ps::InvalidConfig& e) {
            return config_exit(e);
        } catch (const ps::UnknownInput& e) {
            return config_exit(e);
        } catch (const ps::Error& e) {
            return protocol_exit(e);
        }

        const ps::CertificateReport cert = ps::privacy_certificate(ctx, result.params);
        std::cout << "output:\n";
        print_matrix(result.output);
        std::cout << "counters: source->worker=" << result.counters.source_to_worker
                  << " worker<->worker=" << result.counters.inter_worker
                  << " worker->master=" << result.counters.worker_to_master
                  << " reshare-rounds=" << result.counters.per_round_inter_worker.size() << "\n";
        std::cout << "privacy certificate: " << (cert.passed() ? "pass" : "FAIL") << " (" << cert.checked
                  << " subsets)\n";

        if (!out_path.empty()) {
            ps::save_json_file(out_path, ps::run_report(config, seed, result, &cert));
            std::cout << "report written to " << out_path << "\n";
        }
        return kExitOk;
    } catch (const ps::Error& e) {
        return config_exit(e);
    }
}

int cmd_bound(std::size_t t, std::size_t k, bool table, const std::string& csv_path,
              const std::string& json_path) {
    const ps::u64 ours = ps::worker_bound(t, k);
    const ps::BaselineBounds base = ps::baseline_bounds(t, k);
    std::cout << "polynomial sharing: N = " << ours << "\n";
    std::cout << "job-split multiply baseline: N = " << base.multiply << "\n";
    std::cout << "job-split addition baseline: N = " << base.add << "\n";
    std::cout << "linear-only circuits: N = " << base.linear_only << "\n";
    if (table) {
        const auto rows = ps::table1_compare(t, k);
        std::cout << "\n" << std::left << std::setw(16) << "scheme" << std::right << std::setw(12)
                  << "workers" << "\n";
        for (const auto& row : rows) {
            std::cout << std::left << std::setw(16) << row.scheme << std::right << std::setw(12)
                      << row.workers << "\n";
        }
        if (!csv_path.empty()) {
            std::ofstream csv(csv_path);
            if (!csv) {
                std::cerr << "error: cannot write " << csv_path << "\n";
                return kExitConfig;
            }
            csv << "scheme,t,k,workers\n";
            for (const auto& row : rows) csv << row.scheme << "," << t << "," << k << "," << row.workers << "\n";
        }
        if (!json_path.empty()) {
            ps::json j = ps::json::array();
            for (const auto& row : rows) {
                j.push_back({{"scheme", row.scheme}, {"t", t}, {"k", k}, {"workers", row.workers}});
            }
            ps::save_json_file(json_path, j);
        }
    }
    return kExitOk;
}

int cmd_audit(const ConfigFlags& flags, const std::string& expr_path,
              const std::vector<std::string>& input_paths, std::size_t subset_size_flag,
              bool subset_given, std::size_t trials, double tv_threshold, bool expect_leak,
              bool inject_zero_alpha, const std::string& out_path) {
    ps::SystemConfig config = flags.to_config();
    try {
        config.validate();
        ps::FieldContext ctx(config.modulus);
        ps::SharingParams params;
        params.t = config.t;
        params.k = config.k;
        params.n_workers = config.n_workers;
        params.alphas = ps::sample_alphas(ctx, config.n_workers, config.k, config.t, config.seed);
        if (inject_zero_alpha) params.alphas[0] = 0;

        const ps::CertificateReport cert = ps::privacy_certificate(ctx, params);
        std::cout << "mask-window certificate: " << (cert.passed() ? "pass" : "FAIL") << " ("
                  << cert.checked << " subsets of size " << cert.subset_size
                  << (cert.exhaustive ? ", exhaustive" : ", sampled") << ")\n";
        for (const auto& f : cert.failures) {
            std::cout << "  failing subset: {";
            for (std::size_t i = 0; i < f.size(); ++i) std::cout << (i ? "," : "") << f[i];
            std::cout << "}\n";
        }

        bool audit_failed = !cert.passed();
        const ps::AuditReport* audit_ptr = nullptr;
        ps::AuditReport audit;

        const bool tiny = config.modulus <= 17 && config.m <= 2 && config.k <= 2;
        if (!expr_path.empty() && tiny) {
            const ps::Circuit circuit =
                ps::compile(ps::parse_expression(read_text_file(expr_path), ctx));
            const std::vector<ps::Matrix> inputs_a = load_inputs(input_paths, config.modulus);

            // Second input tuple for the distribution comparison: a seeded
            // random tuple, so the two view distributions come from genuinely
            // different private inputs.
            std::vector<ps::Matrix> inputs_b;
            ps::StreamRng rng(config.seed ^ 0xb0b, 0, 0xa11d);
            for (std::size_t g = 0; g < config.gamma; ++g) {
                inputs_b.push_back(ps::Matrix::random(ctx, config.m, config.m, rng));
            }

            const std::size_t subset_size = subset_given ? subset_size_flag : config.t - 1;
            std::vector<std::size_t> subset(subset_size);
            for (std::size_t i = 0; i < subset_size; ++i) subset[i] = i;

            try {
                audit = ps::distribution_audit(config, circuit, inputs_a, inputs_b, subset, trials,
                                               config.seed);
            } catch (const ps::Error& e) {
                return protocol_exit(e);
            }
            audit_ptr = &audit;
            std::cout << "distribution audit: |S|=" << subset_size << " trials=" << trials
                      << " raw-coords=" << audit.raw_coordinates
                      << " derived-coords=" << audit.derived_coordinates << "\n";
            std::cout << std::setprecision(5) << "  max TV distance = " << audit.max_tv()
                      << " (threshold " << tv_threshold << ")"
                      << "  max chi-square = " << audit.max_chi_square << "\n";
            if (audit.beyond_threshold) {
                std::cout << "  subset exceeds the privacy threshold; leakage expected"
                          << (expect_leak ? " (acknowledged via --expect-leak)" : "") << "\n";
            }
            if (audit.max_tv() > tv_threshold && !(audit.beyond_threshold && expect_leak)) {
                audit_failed = true;
            }
        } else if (!expr_path.empty()) {
            std::cout << "distribution audit skipped: needs p <= 17, m <= 2, k <= 2\n";
        }

        if (!out_path.empty()) {
            ps::json j;
            j["config"] = ps::config_to_json(config);
            j["seed"] = config.seed;
            j["certificate"] = ps::certificate_to_json(cert);
            if (audit_ptr) j["audit"] = ps::audit_to_json(*audit_ptr);
            ps::save_json_file(out_path, j);
        }
        if (audit_failed) {
            std::cerr << "audit failed\n";
            return kExitAudit;
        }
        return kExitOk;
    } catch (const ps::AlphaSamplingExhausted& e) {
        return protocol_exit(e);
    } catch (const ps::Error& e) {
        return config_exit(e);
    }
}

int cmd_bench(std::vector<std::size_t> ts, std::vector<std::size_t> ks, std::vector<std::size_t> ms,
              const std::string& expr_text, ps::u64 modulus, ps::u64 seed,
              const std::string& out_path) {
    try {
        ps::FieldContext ctx(modulus);
        const ps::Circuit circuit = ps::compile(ps::parse_expression(expr_text, ctx));

        std::cout << std::left << std::setw(4) << "k" << std::setw(4) << "t" << std::setw(5) << "m"
                  << std::setw(5) << "N" << std::setw(12) << "sharing" << std::setw(14) << "inter-worker"
                  << std::setw(10) << "master" << std::setw(14) << "mults/node" << std::setw(8)
                  << "match" << "\n";

        ps::json rows = ps::json::array();
        bool all_match = true;
        for (std::size_t k : ks) {
            for (std::size_t t : ts) {
                for (std::size_t m : ms) {
                    if (m % k != 0) continue;
                    const std::size_t n = ps::required_workers(circuit, t, k);
                    ps::SystemConfig config{circuit.num_inputs, n, t, k, m, modulus, seed};

                    std::vector<ps::Matrix> inputs;
                    ps::StreamRng rng(seed, 0xbe, k * 1000 + t * 10 + m);
                    for (std::size_t g = 0; g < circuit.num_inputs; ++g) {
                        inputs.push_back(ps::Matrix::random(ctx, m, m, rng));
                    }
                    const ps::RunResult run = ps::run_protocol(config, circuit, inputs, seed);
                    const ps::CostPrediction pred = ps::cost_model(t, k, m, n, circuit.num_inputs, circuit);

                    ps::u64 worker_mults = run.counters.worker_mults.empty() ? 0 : run.counters.worker_mults[0];
                    bool match = run.counters.source_to_worker == pred.sharing_elements &&
                                 run.counters.inter_worker == pred.inter_worker_elements &&
                                 run.counters.worker_to_master == pred.master_elements &&
                                 worker_mults == pred.per_worker_mults;
                    for (ps::u64 per_round : run.counters.per_round_inter_worker) {
                        if (per_round != pred.per_round_inter_worker) match = false;
                    }
                    for (ps::u64 wm : run.counters.worker_mults) {
                        if (wm != worker_mults) match = false;
                    }
                    all_match = all_match && match;

                    std::cout << std::left << std::setw(4) << k << std::setw(4) << t << std::setw(5) << m
                              << std::setw(5) << n << std::setw(12) << run.counters.source_to_worker
                              << std::setw(14) << run.counters.inter_worker << std::setw(10)
                              << run.counters.worker_to_master << std::setw(14) << worker_mults
                              << std::setw(8) << (match ? "yes" : "NO") << "\n";

                    rows.push_back({{"k", k},
                                    {"t", t},
                                    {"m", m},
                                    {"workers", n},
                                    {"measured", ps::counters_to_json(run.counters)},
                                    {"predicted",
                                     {{"sharing_elements", pred.sharing_elements},
                                      {"inter_worker_elements", pred.inter_worker_elements},
                                      {"per_round_inter_worker", pred.per_round_inter_worker},
                                      {"master_elements", pred.master_elements},
                                      {"per_worker_mults", pred.per_worker_mults}}},
                                    {"match", match}});
                }
            }
        }
        std::cout << (all_match ? "all rows match the cost model\n" : "MISMATCH against the cost model\n");
        if (!out_path.empty()) ps::save_json_file(out_path, rows);
        return all_match ? kExitOk : kExitProtocol;
    } catch (const ps::Error& e) {
        return config_exit(e);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polyshare: secure multi-party matrix computation via polynomial sharing"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "execute a secure protocol run");
    ConfigFlags run_flags;
    run_flags.attach(run);
    std::string run_expr, run_out, run_dump_circuit;
    std::vector<std::string> run_inputs;
    run->add_option("--expr", run_expr, "expression file")->required();
    run->add_option("--input", run_inputs, "input matrix json (one per source)")->required();
    run->add_option("--out", run_out, "report json path");
    run->add_option("--dump-circuit", run_dump_circuit, "write the compiled gate list as json");

    // bound
    auto* bound = app.add_subcommand("bound", "worker-count bounds and comparisons");
    std::size_t bound_t = 2, bound_k = 1;
    bool bound_table = false;
    std::string bound_csv, bound_json;
    bound->add_option("-t", bound_t, "privacy threshold t");
    bound->add_option("-k", bound_k, "storage partition count k");
    bound->add_flag("--table", bound_table, "print the per-scheme comparison table");
    bound->add_option("--csv", bound_csv, "write the comparison table as csv");
    bound->add_option("--json", bound_json, "write the comparison table as json");

    // audit
    auto* audit = app.add_subcommand("audit", "privacy certificate and statistical audit");
    ConfigFlags audit_flags;
    audit_flags.attach(audit);
    std::string audit_expr, audit_out;
    std::vector<std::string> audit_inputs;
    std::size_t subset_size = 0, trials = 20000;
    double tv_threshold = 0.03;
    bool expect_leak = false, inject_zero = false;
    audit->add_option("--expr", audit_expr, "expression file (enables the distribution audit)");
    audit->add_option("--input", audit_inputs, "input matrix json (one per source)");
    auto* subset_opt = audit->add_option("--subset-size", subset_size, "colluding subset size (default t-1)");
    audit->add_option("--trials", trials, "trials per input tuple");
    audit->add_option("--tv-threshold", tv_threshold, "max tolerated total-variation distance");
    audit->add_flag("--expect-leak", expect_leak, "subset beyond threshold: report leakage, exit 0");
    audit->add_flag("--inject-zero-alpha", inject_zero, "force alpha_1 = 0 (certificate demo)");
    audit->add_option("--out", audit_out, "report json path");

    // bench
    auto* bench = app.add_subcommand("bench", "measured vs predicted counters over a parameter grid");
    std::vector<std::size_t> bench_t{2}, bench_k{1}, bench_m{2};
    std::string bench_expr = "X1' * X2", bench_out;
    ps::u64 bench_modulus = ps::kDefaultModulus, bench_seed = 0;
    bench->add_option("-t", bench_t, "privacy thresholds");
    bench->add_option("-k", bench_k, "partition counts");
    bench->add_option("-m", bench_m, "matrix dimensions");
    bench->add_option("--expr-text", bench_expr, "expression to benchmark");
    bench->add_option("--modulus", bench_modulus, "prime field modulus");
    bench->add_option("--out", bench_out, "rows as json");
    auto* bench_seed_opt = bench->add_option("--seed", bench_seed, "run seed");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        run_flags.seed = resolve_seed(run_flags.seed_opt, run_flags.seed);
        return cmd_run(run_flags, run_expr, run_inputs, run_out, run_dump_circuit);
    }
    if (bound->parsed()) {
        return cmd_bound(bound_t, bound_k, bound_table, bound_csv, bound_json);
    }
    if (audit->parsed()) {
        audit_flags.seed = resolve_seed(audit_flags.seed_opt, audit_flags.seed);
        return cmd_audit(audit_flags, audit_expr, audit_inputs, subset_size, subset_opt->count() > 0,
                         trials, tv_threshold, expect_leak, inject_zero, audit_out);
    }
    if (bench->parsed()) {
        bench_seed = resolve_seed(bench_seed_opt, bench_seed);
        return cmd_bench(bench_t, bench_k, bench_m, bench_expr, bench_modulus, bench_seed, bench_out);
    }
    return kExitConfig;
}
