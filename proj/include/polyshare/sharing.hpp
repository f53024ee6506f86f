#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polyshare/field.hpp"
#include "polyshare/matrix.hpp"
#include "polyshare/rng.hpp"
#include "polyshare/vandermonde.hpp"

namespace polyshare {

// Run-level sharing configuration: privacy threshold t, partition count k,
// worker count N and the evaluation points. The basis b lives on each bundle.
struct SharingParams {
    std::size_t t = 1;
    std::size_t k = 1;
    std::size_t n_workers = 0;
    std::vector<u64> alphas;  // size N, pairwise distinct, all nonzero

    void validate(const FieldContext& ctx) const;
    bool same_as(const SharingParams& o) const {
        return t == o.t && k == o.k && n_workers == o.n_workers && alphas == o.alphas;
    }
};

// F(x) = sum_j data[j] x^{b*j} + sum_j masks[j] x^{k^2+j}, 0-based j.
struct SharePolynomial {
    std::size_t b = 1;
    std::size_t t = 1;
    std::size_t k = 1;
    std::vector<Matrix> data;   // k blocks, m x (m/k)
    std::vector<Matrix> masks;  // t-1 blocks, m x (m/k)

    std::vector<u64> exponents() const;
    Matrix evaluate(const FieldContext& ctx, u64 alpha, u64* mul_count = nullptr) const;
};

// Exponent set {b*j : j in [0,k)} followed by the mask window {k^2..k^2+t-2};
// already sorted since b*(k-1) < k^2.
std::vector<u64> sharing_exponents(std::size_t b, std::size_t t, std::size_t k);

// Per-worker evaluations of one logical matrix's sharing polynomial.
struct ShareBundle {
    SharingParams params;
    std::string label;
    std::size_t basis = 1;
    std::vector<Matrix> shares;  // size N, each m x (m/k)
    // When set, the physical shares belong to the transpose of the logical
    // value this bundle stands for; the circuit driver materializes on demand.
    bool transposed = false;

    std::size_t m() const { return shares.empty() ? 0 : shares.front().rows(); }
};

// Nonzero-exponent support of H(x) = F_{A,1,t,k}^T(x) * F_{B,k,t,k}(x).
struct SupportSet {
    std::size_t k = 1;
    std::size_t t = 1;
    std::vector<u64> exponents;  // sorted

    std::size_t size() const { return exponents.size(); }
};

SupportSet product_support(std::size_t k, std::size_t t);

// Exponent of H(x) carrying block A_i^T B_j; 0-based i, j in [0, k).
u64 coefficient_index(std::size_t i, std::size_t j, std::size_t k);

// Draws N distinct nonzero evaluation points and verifies the reconstruction
// matrices the protocol will rely on (canonical basis-1/basis-k windows, and
// the product-support matrix when N is large enough). Resamples on failure.
std::vector<u64> sample_alphas(const FieldContext& ctx, std::size_t n_workers, std::size_t k,
                               std::size_t t, u64 seed, std::size_t max_attempts = 64);

SharePolynomial make_share_polynomial(const FieldContext& ctx, const Matrix& a, std::size_t b,
                                      std::size_t t, std::size_t k, StreamRng& rng);

ShareBundle share_matrix(const FieldContext& ctx, const Matrix& a, std::size_t b,
                         const SharingParams& params, StreamRng& rng, std::string label,
                         u64* mul_count = nullptr);

// Recovers A from >= k+t-1 (alpha, share) pairs; the first k+t-1 are used.
Matrix reconstruct_from(const FieldContext& ctx, const std::vector<u64>& alphas,
                        const std::vector<Matrix>& shares, std::size_t b, std::size_t t,
                        std::size_t k);

Matrix reconstruct(const FieldContext& ctx, const ShareBundle& bundle);

// Same, from an arbitrary worker subset (0-based indices into the bundle).
Matrix reconstruct_subset(const FieldContext& ctx, const ShareBundle& bundle,
                          const std::vector<std::size_t>& subset);

}  // namespace polyshare
