#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polyshare/field.hpp"
#include "polyshare/matrix.hpp"
#include "polyshare/procedures.hpp"

namespace polyshare {

// AST over input refs, transpose, scalar constants, +, matrix product.
struct ExprNode {
    enum class Kind { input, transpose, scalar_mul, add, matmul } kind = Kind::input;
    std::size_t a = 0;     // child index
    std::size_t b = 0;     // second child (add, matmul)
    std::size_t input = 0; // 0-based input index (input)
    u64 scalar = 0;        // (scalar_mul)
};

struct Expression {
    std::vector<ExprNode> nodes;
    std::size_t root = 0;
    std::size_t num_inputs = 0;  // highest referenced input + 1
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := ['-'] (INT | ident ["'"] | '(' expr ')' ["'"]) ['^' INT]
//   ident  := 'X' INT           (X1 is the first input)
// Subtraction desugars to scalar (p-1) times the term; powers expand to
// repeated products.
Expression parse_expression(const std::string& text, const FieldContext& ctx);

// Either another gate's output or one of the circuit inputs.
struct WireRef {
    bool is_input = false;
    std::size_t idx = 0;

    bool operator==(const WireRef& o) const { return is_input == o.is_input && idx == o.idx; }
};

struct Gate {
    enum class Kind { add, scalar_mul, matmul, transpose } kind = Kind::add;
    WireRef a;
    WireRef b;      // add, matmul
    u64 scalar = 0; // scalar_mul

    bool operator==(const Gate& o) const {
        return kind == o.kind && a == o.a && b == o.b && scalar == o.scalar;
    }
};

struct Circuit {
    std::vector<Gate> gates;  // evaluation order
    WireRef output;
    std::size_t num_inputs = 0;

    bool has_matmul() const {
        for (const auto& g : gates)
            if (g.kind == Gate::Kind::matmul) return true;
        return false;
    }
};

// Gate ordering: within a monomial the product folds right-to-left; monomials
// are computed last-to-first and accumulated as they complete.
Circuit compile(const Expression& expr);

// Plaintext oracles.
Matrix evaluate_plain(const FieldContext& ctx, const Expression& expr,
                      const std::vector<Matrix>& inputs);
Matrix evaluate_circuit_plain(const FieldContext& ctx, const Circuit& circuit,
                              const std::vector<Matrix>& inputs);

// Workers needed to run this circuit at (t,k): the product-support size when
// any matrix multiplication is present, k+t-1 otherwise.
std::size_t required_workers(const Circuit& circuit, std::size_t t, std::size_t k);

// Reshare rounds the secure evaluation will execute, by kind. Mirrors the
// dispatch in evaluate_secure and feeds the cost model.
struct RoundBudget {
    std::size_t multiply = 0;
    std::size_t transpose = 0;
    std::size_t change_basis = 0;

    std::size_t total() const { return multiply + transpose + change_basis; }
};
RoundBudget plan_rounds(const Circuit& circuit, std::size_t k);

// Secure evaluation over the engine; inputs are (1,t,k) bundles. Returns a
// (1,t,k) bundle holding shares of the circuit output.
ShareBundle evaluate_secure(ProtocolEngine& eng, const Circuit& circuit,
                            const std::vector<ShareBundle>& inputs);

}  // namespace polyshare
