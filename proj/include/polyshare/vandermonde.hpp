#pragma once

#include <cstddef>
#include <vector>

#include "polyshare/field.hpp"
#include "polyshare/matrix.hpp"

namespace polyshare {

// For a polynomial P with support contained in `exponents`, row j satisfies
//   coefficient(exponents[targets[j]]) = sum_n rows[j][n] * P(alpha_n).
struct ReconstructionVectors {
    std::vector<u64> exponents;
    std::vector<std::size_t> targets;
    std::vector<std::vector<u64>> rows;
};

// Gauss-Jordan inverse over Z_p. Singularity is exact rank deficiency.
std::vector<std::vector<u64>> invert_square(const FieldContext& ctx,
                                            std::vector<std::vector<u64>> m);

// Inverts M[n][i] = alpha_n^{exponents[i]} and reads the target rows of the
// inverse. Requires |alphas| == |exponents| and distinct alphas.
ReconstructionVectors solve_general_vandermonde(const FieldContext& ctx,
                                                const std::vector<u64>& alphas,
                                                const std::vector<u64>& exponents,
                                                const std::vector<std::size_t>& targets);

bool is_invertible_vandermonde(const FieldContext& ctx, const std::vector<u64>& alphas,
                               const std::vector<u64>& exponents);

// Recovers all coefficients of a matrix polynomial with the given support
// from |exponents| evaluations. values[n] = P(alphas[n]).
std::vector<Matrix> recover_coefficients(const FieldContext& ctx, const std::vector<u64>& alphas,
                                         const std::vector<Matrix>& values,
                                         const std::vector<u64>& exponents);

}  // namespace polyshare
