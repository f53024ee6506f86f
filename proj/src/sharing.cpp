#include "polyshare/sharing.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace polyshare {

void SharingParams::validate(const FieldContext& ctx) const {
    if (t < 1 || k < 1) throw InvalidConfig("sharing params: t and k must be >= 1");
    if (n_workers + 1 < k + t) {
        throw InvalidConfig("sharing params: N=" + std::to_string(n_workers) + " < k+t-1=" +
                            std::to_string(k + t - 1));
    }
    if (alphas.size() != n_workers) throw InvalidConfig("sharing params: |alphas| != N");
    std::set<u64> seen;
    for (u64 a : alphas) {
        if (a == 0 || a >= ctx.modulus()) throw InvalidConfig("sharing params: alphas must be nonzero field elements");
        if (!seen.insert(a).second) throw InvalidConfig("sharing params: alphas must be distinct");
    }
}

std::vector<u64> sharing_exponents(std::size_t b, std::size_t t, std::size_t k) {
    std::vector<u64> e;
    e.reserve(k + t - 1);
    for (std::size_t j = 0; j < k; ++j) e.push_back(static_cast<u64>(b) * j);
    const u64 k2 = static_cast<u64>(k) * k;
    for (std::size_t j = 0; j + 1 < t; ++j) e.push_back(k2 + j);
    return e;
}

std::vector<u64> SharePolynomial::exponents() const { return sharing_exponents(b, t, k); }

Matrix SharePolynomial::evaluate(const FieldContext& ctx, u64 alpha, u64* mul_count) const {
    Matrix acc(data[0].rows(), data[0].cols());
    const u64 k2 = static_cast<u64>(k) * k;
    for (std::size_t j = 0; j < data.size(); ++j) {
        add_in_place(ctx, acc, scale(ctx, data[j], ctx.pow(alpha, static_cast<u64>(b) * j), mul_count));
    }
    for (std::size_t j = 0; j < masks.size(); ++j) {
        add_in_place(ctx, acc, scale(ctx, masks[j], ctx.pow(alpha, k2 + j), mul_count));
    }
    return acc;
}

SupportSet product_support(std::size_t k, std::size_t t) {
    if (k < 1 || t < 1) throw InvalidConfig("product_support: k,t must be >= 1");
    const long long K = static_cast<long long>(k);
    const long long T = static_cast<long long>(t);
    const long long k2 = K * K;

    std::set<u64> exps;
    // data x data: {i + k*j} fills [0, k^2-1]
    for (long long e = 0; e < k2; ++e) exps.insert(static_cast<u64>(e));
    // data x mask window, [k^2, k^2 + (k-1) + (t-2)]
    for (long long e = k2; e <= k2 + K - 1 + T - 2; ++e) exps.insert(static_cast<u64>(e));
    // mask x data: {k^2 + i*k + j}
    for (long long i = 0; i <= K - 1; ++i)
        for (long long j = 0; j <= T - 2; ++j) exps.insert(static_cast<u64>(k2 + i * K + j));
    // mask x mask, [2k^2, 2k^2 + 2t - 4]
    for (long long e = 2 * k2; e <= 2 * k2 + 2 * T - 4; ++e) exps.insert(static_cast<u64>(e));

    return SupportSet{k, t, std::vector<u64>(exps.begin(), exps.end())};
}

u64 coefficient_index(std::size_t i, std::size_t j, std::size_t k) {
    if (i >= k || j >= k) {
        throw IndexOutOfRange("coefficient_index: block (" + std::to_string(i) + "," + std::to_string(j) +
                              ") out of range for k=" + std::to_string(k));
    }
    return static_cast<u64>(i) + static_cast<u64>(k) * j;
}

namespace {

bool alphas_pass_checks(const FieldContext& ctx, const std::vector<u64>& alphas, std::size_t k,
                        std::size_t t) {
    const std::size_t window = k + t - 1;
    std::vector<u64> head(alphas.begin(), alphas.begin() + window);
    if (!is_invertible_vandermonde(ctx, head, sharing_exponents(1, t, k))) return false;
    if (!is_invertible_vandermonde(ctx, head, sharing_exponents(k, t, k))) return false;

    const SupportSet support = product_support(k, t);
    if (alphas.size() >= support.size()) {
        std::vector<u64> prod_head(alphas.begin(), alphas.begin() + support.size());
        if (!is_invertible_vandermonde(ctx, prod_head, support.exponents)) return false;
    }
    return true;
}

}  // namespace

std::vector<u64> sample_alphas(const FieldContext& ctx, std::size_t n_workers, std::size_t k,
                               std::size_t t, u64 seed, std::size_t max_attempts) {
    if (n_workers < k + t - 1) {
        throw InvalidConfig("sample_alphas: N=" + std::to_string(n_workers) +
                            " < k+t-1=" + std::to_string(k + t - 1));
    }
    if (ctx.modulus() - 1 < n_workers) {
        throw AlphaSamplingExhausted("field has only " + std::to_string(ctx.modulus() - 1) +
                                     " nonzero elements, need " + std::to_string(n_workers));
    }
    StreamRng rng(seed, /*actor=*/0, /*round=*/0);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<u64> alphas;
        std::unordered_set<u64> used;
        alphas.reserve(n_workers);
        while (alphas.size() < n_workers) {
            u64 a = 1 + rng.below(ctx.modulus() - 1);
            if (used.insert(a).second) alphas.push_back(a);
        }
        if (alphas_pass_checks(ctx, alphas, k, t)) return alphas;
    }
    throw AlphaSamplingExhausted("no valid evaluation points after " + std::to_string(max_attempts) +
                                 " attempts (field too small for k=" + std::to_string(k) +
                                 ", t=" + std::to_string(t) + ", N=" + std::to_string(n_workers) + ")");
}

SharePolynomial make_share_polynomial(const FieldContext& ctx, const Matrix& a, std::size_t b,
                                      std::size_t t, std::size_t k, StreamRng& rng) {
    if (b < 1 || b > k) {
        throw BadBasis("basis b=" + std::to_string(b) + " outside [1, k=" + std::to_string(k) + "]");
    }
    auto part = partition_columns(a, k);
    SharePolynomial poly;
    poly.b = b;
    poly.t = t;
    poly.k = k;
    poly.data = std::move(part.blocks);
    poly.masks.reserve(t - 1);
    for (std::size_t j = 0; j + 1 < t; ++j) {
        poly.masks.push_back(Matrix::random(ctx, a.rows(), a.cols() / k, rng));
    }
    return poly;
}

ShareBundle share_matrix(const FieldContext& ctx, const Matrix& a, std::size_t b,
                         const SharingParams& params, StreamRng& rng, std::string label,
                         u64* mul_count) {
    SharePolynomial poly = make_share_polynomial(ctx, a, b, params.t, params.k, rng);
    ShareBundle bundle;
    bundle.params = params;
    bundle.label = std::move(label);
    bundle.basis = b;
    bundle.shares.reserve(params.n_workers);
    for (u64 alpha : params.alphas) bundle.shares.push_back(poly.evaluate(ctx, alpha, mul_count));
    return bundle;
}

Matrix reconstruct_from(const FieldContext& ctx, const std::vector<u64>& alphas,
                        const std::vector<Matrix>& shares, std::size_t b, std::size_t t,
                        std::size_t k) {
    const std::size_t need = k + t - 1;
    if (shares.size() != alphas.size()) throw DimensionMismatch("reconstruct: share/alpha count mismatch");
    if (shares.size() < need) {
        throw NotEnoughShares("reconstruct: have " + std::to_string(shares.size()) + " shares, need " +
                              std::to_string(need));
    }
    std::vector<u64> a_sub(alphas.begin(), alphas.begin() + need);
    std::vector<std::size_t> targets(k);
    for (std::size_t j = 0; j < k; ++j) targets[j] = j;  // data blocks come first in the exponent list
    auto recon = solve_general_vandermonde(ctx, a_sub, sharing_exponents(b, t, k), targets);

    std::vector<Matrix> blocks;
    blocks.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        Matrix acc(shares[0].rows(), shares[0].cols());
        for (std::size_t n = 0; n < need; ++n) {
            if (recon.rows[j][n] == 0) continue;
            add_in_place(ctx, acc, scale(ctx, shares[n], recon.rows[j][n]));
        }
        blocks.push_back(std::move(acc));
    }
    return concat_columns(blocks);
}

Matrix reconstruct(const FieldContext& ctx, const ShareBundle& bundle) {
    return reconstruct_from(ctx, bundle.params.alphas, bundle.shares, bundle.basis, bundle.params.t,
                            bundle.params.k);
}

Matrix reconstruct_subset(const FieldContext& ctx, const ShareBundle& bundle,
                          const std::vector<std::size_t>& subset) {
    std::vector<u64> alphas;
    std::vector<Matrix> shares;
    alphas.reserve(subset.size());
    shares.reserve(subset.size());
    for (std::size_t idx : subset) {
        if (idx >= bundle.shares.size()) throw IndexOutOfRange("reconstruct_subset: worker index out of range");
        alphas.push_back(bundle.params.alphas[idx]);
        shares.push_back(bundle.shares[idx]);
    }
    return reconstruct_from(ctx, alphas, shares, bundle.basis, bundle.params.t, bundle.params.k);
}

}  // namespace polyshare
