#include "polyshare/procedures.hpp"

#include <algorithm>

namespace polyshare {

namespace {

std::string bound_message(std::size_t n, std::size_t required, std::size_t t, std::size_t k) {
    return "N=" + std::to_string(n) + " workers, need " + std::to_string(required) +
           " = min{2k^2+2t-3, k^2+kt+t-2} for k=" + std::to_string(k) + ", t=" + std::to_string(t);
}

void require_same_params(const ShareBundle& a, const ShareBundle& b, const char* op) {
    if (!a.params.same_as(b.params)) {
        throw ParamMismatch(std::string(op) + ": operand bundles carry different sharing params");
    }
}

void require_bundle_shape(const ShareBundle& bundle, std::size_t m, std::size_t k, const char* op) {
    if (bundle.shares.empty() || bundle.shares.front().rows() != m ||
        bundle.shares.front().cols() != m / k) {
        throw DimensionMismatch(std::string(op) + ": bundle " + bundle.label + " shares are not " +
                                std::to_string(m) + "x" + std::to_string(m / k));
    }
}

// Derived labels are for humans; keep them from growing with circuit depth.
std::string clip_label(std::string label) {
    constexpr std::size_t kMax = 96;
    if (label.size() > kMax) {
        label.resize(kMax - 3);
        label += "...";
    }
    return label;
}

// Pads the square-solve rows with zeros for workers beyond the solve window.
std::vector<std::vector<u64>> padded_rows(const FieldContext& ctx, const std::vector<u64>& alphas,
                                          const std::vector<u64>& exponents,
                                          const std::vector<std::size_t>& targets,
                                          std::size_t n_workers) {
    if (alphas.size() < exponents.size()) {
        throw TooFewWorkers("reshare plan needs " + std::to_string(exponents.size()) +
                            " evaluation points, have " + std::to_string(alphas.size()));
    }
    std::vector<u64> head(alphas.begin(), alphas.begin() + exponents.size());
    auto recon = solve_general_vandermonde(ctx, head, exponents, targets);
    for (auto& row : recon.rows) row.resize(n_workers, 0);
    return std::move(recon.rows);
}

}  // namespace

ProtocolEngine::ProtocolEngine(const FieldContext& ctx, SharingParams params, std::size_t m, u64 run_seed)
    : ctx_(&ctx), params_(std::move(params)), m_(m), run_seed_(run_seed) {
    params_.validate(ctx);
    if (params_.k == 0 || m % params_.k != 0) {
        throw IndivisibleDimension("engine: k=" + std::to_string(params_.k) +
                                   " does not divide m=" + std::to_string(m));
    }
    counters_.worker_mults.assign(params_.n_workers, 0);
}

ShareBundle ProtocolEngine::reshare_round(const std::vector<Matrix>& locals, std::size_t basis,
                                          RoundKind kind, std::string label) {
    const std::size_t n = params_.n_workers;
    const std::size_t round = next_round();
    transcript_.note_round({round, kind, basis});

    const std::size_t block_cols = m_ / params_.k;
    std::vector<Matrix> sums(n, Matrix(m_, block_cols));
    u64 round_traffic = 0;

    for (std::size_t sender = 0; sender < n; ++sender) {
        StreamRng rng(run_seed_, Actor::worker(sender).id(), round);
        ShareBundle outgoing = share_matrix(*ctx_, locals[sender], basis, params_, rng, label,
                                            &counters_.worker_mults[sender]);
        for (std::size_t receiver = 0; receiver < n; ++receiver) {
            const Matrix& payload = outgoing.shares[receiver];
            const bool local = sender == receiver;
            if (local) {
                counters_.self_worker += payload.size();
            } else {
                counters_.inter_worker += payload.size();
                round_traffic += payload.size();
            }
            add_in_place(*ctx_, sums[receiver], payload);
            transcript_.append({Phase::compute, round, Actor::worker(sender), Actor::worker(receiver),
                                payload, local});
        }
    }
    counters_.per_round_inter_worker.push_back(round_traffic);

    ShareBundle out;
    out.params = params_;
    out.label = std::move(label);
    out.basis = basis;
    out.shares = std::move(sums);
    return out;
}

ShareBundle add_shares(const FieldContext& ctx, const ShareBundle& a, const ShareBundle& b) {
    require_same_params(a, b, "add_shares");
    if (a.basis != b.basis) {
        throw ParamMismatch("add_shares: bases differ (" + std::to_string(a.basis) + " vs " +
                            std::to_string(b.basis) + ")");
    }
    ShareBundle out;
    out.params = a.params;
    out.label = clip_label("add(" + a.label + "," + b.label + ")");
    out.basis = a.basis;
    out.shares.reserve(a.shares.size());
    for (std::size_t n = 0; n < a.shares.size(); ++n) {
        out.shares.push_back(add(ctx, a.shares[n], b.shares[n]));
    }
    return out;
}

ShareBundle scale_shares(const FieldContext& ctx, const ShareBundle& a, u64 q,
                         TrafficCounters* counters) {
    ShareBundle out;
    out.params = a.params;
    out.label = clip_label("scale(" + std::to_string(q) + "," + a.label + ")");
    out.basis = a.basis;
    out.shares.reserve(a.shares.size());
    const bool count = counters && counters->worker_mults.size() == a.shares.size();
    for (std::size_t n = 0; n < a.shares.size(); ++n) {
        u64* cnt = count ? &counters->worker_mults[n] : nullptr;
        out.shares.push_back(scale(ctx, a.shares[n], q, cnt));
    }
    return out;
}

ResharePlan make_multiply_plan(const FieldContext& ctx, const SharingParams& params,
                               std::size_t out_basis) {
    const SupportSet support = product_support(params.k, params.t);
    std::vector<std::size_t> targets;
    targets.reserve(params.k * params.k);
    // Row-major over the (i,j) block grid of H^(n): target index i*k + j.
    for (std::size_t i = 0; i < params.k; ++i) {
        for (std::size_t j = 0; j < params.k; ++j) {
            const u64 exp = coefficient_index(i, j, params.k);
            const auto it = std::lower_bound(support.exponents.begin(), support.exponents.end(), exp);
            targets.push_back(static_cast<std::size_t>(it - support.exponents.begin()));
        }
    }
    ResharePlan plan;
    plan.support = support.exponents;
    plan.out_basis = out_basis;
    plan.recon = padded_rows(ctx, params.alphas, support.exponents, targets, params.n_workers);
    return plan;
}

ResharePlan make_data_plan(const FieldContext& ctx, const SharingParams& params, std::size_t in_basis,
                           std::size_t out_basis) {
    const std::vector<u64> exps = sharing_exponents(in_basis, params.t, params.k);
    std::vector<std::size_t> targets(params.k);
    for (std::size_t j = 0; j < params.k; ++j) targets[j] = j;
    ResharePlan plan;
    plan.support = exps;
    plan.out_basis = out_basis;
    plan.recon = padded_rows(ctx, params.alphas, exps, targets, params.n_workers);
    return plan;
}

ShareBundle multiply_shares(ProtocolEngine& eng, const ShareBundle& a, const ShareBundle& b,
                            std::size_t out_basis) {
    require_same_params(a, b, "multiply_shares");
    const auto& params = eng.params();
    const std::size_t k = params.k;
    if (a.basis != 1 || b.basis != k) {
        throw BasisMismatch("multiply_shares: need bases (1," + std::to_string(k) + "), got (" +
                            std::to_string(a.basis) + "," + std::to_string(b.basis) + ")");
    }
    if (out_basis < 1 || out_basis > k) throw BadBasis("multiply_shares: out basis outside [1,k]");
    const std::size_t required = product_support(k, params.t).size();
    if (params.n_workers < required) {
        throw TooFewWorkers("multiply_shares: " + bound_message(params.n_workers, required, params.t, k));
    }

    require_bundle_shape(a, eng.m(), k, "multiply_shares");
    require_bundle_shape(b, eng.m(), k, "multiply_shares");

    const ResharePlan plan = make_multiply_plan(eng.ctx(), params, out_basis);
    const std::size_t n = params.n_workers;
    const std::size_t block = eng.m() / k;

    std::vector<Matrix> locals;
    locals.reserve(n);
    for (std::size_t worker = 0; worker < n; ++worker) {
        u64* mults = &eng.counters().worker_mults[worker];
        const Matrix h = matmul_T(eng.ctx(), a.shares[worker], b.shares[worker], mults);
        // H^(n): block (i,j) = r_n^{(i,j)} * H(alpha_n), assembled m x m.
        Matrix hn(eng.m(), eng.m());
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                const u64 r = plan.recon[i * k + j][worker];
                const Matrix scaled = scale(eng.ctx(), h, r, mults);
                for (std::size_t rr = 0; rr < block; ++rr)
                    for (std::size_t cc = 0; cc < block; ++cc)
                        hn.at(i * block + rr, j * block + cc) = scaled.at(rr, cc);
            }
        }
        locals.push_back(std::move(hn));
    }
    return eng.reshare_round(locals, out_basis, RoundKind::reshare_multiply,
                             clip_label("mul(" + a.label + "," + b.label + ")"));
}

ShareBundle transpose_shares(ProtocolEngine& eng, const ShareBundle& a) {
    const auto& params = eng.params();
    const std::size_t k = params.k;
    const std::size_t required = k + params.t - 1;
    if (params.n_workers < required) {
        throw TooFewWorkers("transpose_shares: N=" + std::to_string(params.n_workers) + " < k+t-1=" +
                            std::to_string(required));
    }
    require_bundle_shape(a, eng.m(), k, "transpose_shares");

    const ResharePlan plan = make_data_plan(eng.ctx(), params, a.basis, a.basis);
    const std::size_t n = params.n_workers;
    const std::size_t block = eng.m() / k;

    std::vector<Matrix> locals;
    locals.reserve(n);
    for (std::size_t worker = 0; worker < n; ++worker) {
        u64* mults = &eng.counters().worker_mults[worker];
        // Slice the own share into k row blocks F_i(alpha_n), transpose each
        // slice so the aggregate recovers (A_ij)^T, and place r^{(j)} F_i^T at
        // block position (j, i).
        Matrix hn(eng.m(), eng.m());
        for (std::size_t i = 0; i < k; ++i) {
            const Matrix fi_t = transpose(row_slice(a.shares[worker], i, k));
            for (std::size_t j = 0; j < k; ++j) {
                const Matrix scaled = scale(eng.ctx(), fi_t, plan.recon[j][worker], mults);
                for (std::size_t rr = 0; rr < block; ++rr)
                    for (std::size_t cc = 0; cc < block; ++cc)
                        hn.at(j * block + rr, i * block + cc) = scaled.at(rr, cc);
            }
        }
        locals.push_back(std::move(hn));
    }
    return eng.reshare_round(locals, a.basis, RoundKind::reshare_transpose, clip_label("transpose(" + a.label + ")"));
}

ShareBundle change_basis(ProtocolEngine& eng, const ShareBundle& a, std::size_t new_basis) {
    const auto& params = eng.params();
    const std::size_t k = params.k;
    if (new_basis < 1 || new_basis > k) {
        throw BadBasis("change_basis: target basis " + std::to_string(new_basis) + " outside [1,k=" +
                       std::to_string(k) + "]");
    }
    const std::size_t required = k + params.t - 1;
    if (params.n_workers < required) {
        throw TooFewWorkers("change_basis: N=" + std::to_string(params.n_workers) + " < k+t-1=" +
                            std::to_string(required));
    }
    require_bundle_shape(a, eng.m(), k, "change_basis");

    const ResharePlan plan = make_data_plan(eng.ctx(), params, a.basis, new_basis);
    const std::size_t n = params.n_workers;

    std::vector<Matrix> locals;
    locals.reserve(n);
    for (std::size_t worker = 0; worker < n; ++worker) {
        u64* mults = &eng.counters().worker_mults[worker];
        // H^(n) = [ r^{(0)} F(alpha_n) | ... | r^{(k-1)} F(alpha_n) ].
        std::vector<Matrix> cols;
        cols.reserve(k);
        for (std::size_t j = 0; j < k; ++j) {
            cols.push_back(scale(eng.ctx(), a.shares[worker], plan.recon[j][worker], mults));
        }
        locals.push_back(concat_columns(cols));
    }
    return eng.reshare_round(locals, new_basis, RoundKind::reshare_change_basis,
                             clip_label("rebase(" + std::to_string(new_basis) + "," + a.label + ")"));
}

}  // namespace polyshare
