#include "polyshare/vandermonde.hpp"

#include <string>

namespace polyshare {

std::vector<std::vector<u64>> invert_square(const FieldContext& ctx, std::vector<std::vector<u64>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<u64>> inv(n, std::vector<u64>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) throw SingularMatrix();
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            std::swap(inv[pivot], inv[col]);
        }
        const u64 pinv = ctx.inv(m[col][col]);
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] = ctx.mul(m[col][j], pinv);
            inv[col][j] = ctx.mul(inv[col][j], pinv);
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0) continue;
            const u64 f = m[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[row][j] = ctx.sub(m[row][j], ctx.mul(f, m[col][j]));
                inv[row][j] = ctx.sub(inv[row][j], ctx.mul(f, inv[col][j]));
            }
        }
    }
    return inv;
}

namespace {

std::vector<std::vector<u64>> evaluation_matrix(const FieldContext& ctx, const std::vector<u64>& alphas,
                                                const std::vector<u64>& exponents) {
    std::vector<std::vector<u64>> m(alphas.size(), std::vector<u64>(exponents.size()));
    for (std::size_t n = 0; n < alphas.size(); ++n)
        for (std::size_t i = 0; i < exponents.size(); ++i) m[n][i] = ctx.pow(alphas[n], exponents[i]);
    return m;
}

}  // namespace

ReconstructionVectors solve_general_vandermonde(const FieldContext& ctx, const std::vector<u64>& alphas,
                                                const std::vector<u64>& exponents,
                                                const std::vector<std::size_t>& targets) {
    if (alphas.size() != exponents.size()) {
        throw DimensionMismatch("solve_general_vandermonde: " + std::to_string(alphas.size()) +
                                " alphas vs " + std::to_string(exponents.size()) + " exponents");
    }
    for (std::size_t t : targets) {
        if (t >= exponents.size()) throw IndexOutOfRange("solve_general_vandermonde: bad target index");
    }
    auto inv = invert_square(ctx, evaluation_matrix(ctx, alphas, exponents));

    ReconstructionVectors out;
    out.exponents = exponents;
    out.targets = targets;
    out.rows.reserve(targets.size());
    for (std::size_t t : targets) out.rows.push_back(inv[t]);
    return out;
}

bool is_invertible_vandermonde(const FieldContext& ctx, const std::vector<u64>& alphas,
                               const std::vector<u64>& exponents) {
    if (alphas.size() != exponents.size()) return false;
    try {
        invert_square(ctx, evaluation_matrix(ctx, alphas, exponents));
        return true;
    } catch (const SingularMatrix&) {
        return false;
    }
}

std::vector<Matrix> recover_coefficients(const FieldContext& ctx, const std::vector<u64>& alphas,
                                         const std::vector<Matrix>& values,
                                         const std::vector<u64>& exponents) {
    if (values.size() != alphas.size()) {
        throw DimensionMismatch("recover_coefficients: value/alpha count mismatch");
    }
    std::vector<std::size_t> all(exponents.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto recon = solve_general_vandermonde(ctx, alphas, exponents, all);

    std::vector<Matrix> coeffs;
    coeffs.reserve(exponents.size());
    for (const auto& row : recon.rows) {
        Matrix acc(values[0].rows(), values[0].cols());
        for (std::size_t n = 0; n < values.size(); ++n) {
            if (row[n] == 0) continue;
            add_in_place(ctx, acc, scale(ctx, values[n], row[n]));
        }
        coeffs.push_back(std::move(acc));
    }
    return coeffs;
}

}  // namespace polyshare
