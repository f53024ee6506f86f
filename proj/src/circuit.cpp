#include "polyshare/circuit.hpp"

#include <cctype>

namespace polyshare {

namespace {

constexpr std::size_t kMaxInputIndex = 1000000;
constexpr u64 kMaxPower = 64;
constexpr std::size_t kMaxNesting = 200;

class Parser {
  public:
    Parser(const std::string& text, const FieldContext& ctx) : text_(text), ctx_(ctx) {}

    Expression run() {
        expr_.root = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
        if (expr_.nodes.empty()) throw SyntaxError("empty expression", 0);
        return std::move(expr_);
    }

  private:
    const std::string& text_;
    const FieldContext& ctx_;
    std::size_t pos_ = 0;
    std::size_t paren_depth_ = 0;
    Expression expr_;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool consume(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::size_t push(ExprNode n) {
        expr_.nodes.push_back(n);
        return expr_.nodes.size() - 1;
    }

    // Scalar constants reduce mod p, so arbitrarily long digit strings are fine.
    u64 parse_scalar() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            throw SyntaxError("expected integer", pos_);
        }
        u64 v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = (v * 10 + static_cast<u64>(text_[pos_] - '0')) % ctx_.modulus();
            ++pos_;
        }
        return v;
    }

    // Structural integers (input indices, power exponents) must stay in range.
    u64 parse_bounded_uint(u64 max, const char* what) {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            throw SyntaxError(std::string("expected ") + what, pos_);
        }
        u64 v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<u64>(text_[pos_] - '0');
            if (v > max) throw SyntaxError(std::string(what) + " exceeds " + std::to_string(max), at);
            ++pos_;
        }
        return v;
    }

    struct Factor {
        bool is_scalar = false;
        u64 scalar = 0;
        std::size_t node = 0;
        bool negated = false;
    };

    // expr := term (('+'|'-') term)*. Each subtracted term is negated in
    // place; the adds fold right-associated so compilation walks monomials
    // last-to-first.
    std::size_t parse_expr() {
        if (++paren_depth_ > kMaxNesting) throw SyntaxError("expression nests too deeply", pos_);
        std::vector<std::size_t> terms{parse_term()};
        for (;;) {
            skip_ws();
            if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) break;
            const char op = text_[pos_++];
            std::size_t term = parse_term();
            if (op == '-') term = push({ExprNode::Kind::scalar_mul, term, 0, 0, ctx_.modulus() - 1});
            terms.push_back(term);
        }
        std::size_t chain = terms.back();
        for (std::size_t i = terms.size() - 1; i-- > 0;) {
            chain = push({ExprNode::Kind::add, terms[i], chain, 0, 0});
        }
        --paren_depth_;
        return chain;
    }

    std::size_t parse_term() {
        skip_ws();
        const std::size_t term_pos = pos_;
        u64 coeff = 1;
        std::vector<std::size_t> factors;

        for (;;) {
            Factor f = parse_factor();
            if (f.is_scalar) {
                coeff = ctx_.mul(coeff, f.scalar);
            } else {
                factors.push_back(f.node);
                if (f.negated) coeff = ctx_.mul(coeff, ctx_.modulus() - 1);
            }
            if (!consume('*')) break;
        }
        if (factors.empty()) throw SyntaxError("term has no matrix input", term_pos);

        std::size_t chain = factors.back();
        for (std::size_t i = factors.size() - 1; i-- > 0;) {
            chain = push({ExprNode::Kind::matmul, factors[i], chain, 0, 0});
        }
        if (coeff != 1) chain = push({ExprNode::Kind::scalar_mul, chain, 0, 0, coeff});
        return chain;
    }

    Factor parse_factor() {
        skip_ws();
        Factor f;
        f.negated = consume('-');
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("expected factor", pos_);

        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            f.is_scalar = true;
            f.scalar = parse_scalar();
            if (f.negated) {
                f.scalar = ctx_.neg(f.scalar);
                f.negated = false;
            }
            if (consume('^')) {
                const u64 e = parse_power();
                f.scalar = ctx_.pow(f.scalar, e);
            }
            return f;
        }
        if (c == 'X' || c == 'x') {
            ++pos_;
            const std::size_t idx_pos = pos_;
            const u64 idx = parse_bounded_uint(kMaxInputIndex, "input index after X");
            if (idx == 0) throw UnknownInput("input indices start at X1 (position " + std::to_string(idx_pos) + ")");
            ExprNode node{ExprNode::Kind::input, 0, 0, static_cast<std::size_t>(idx - 1), 0};
            if (node.input + 1 > expr_.num_inputs) expr_.num_inputs = node.input + 1;
            f.node = push(node);
            if (consume('\'')) f.node = push({ExprNode::Kind::transpose, f.node, 0, 0, 0});
            expand_power(f);
            return f;
        }
        if (c == '(') {
            ++pos_;
            f.node = parse_expr();
            skip_ws();
            if (!consume(')')) throw SyntaxError("expected ')'", pos_);
            if (consume('\'')) f.node = push({ExprNode::Kind::transpose, f.node, 0, 0, 0});
            expand_power(f);
            return f;
        }
        throw SyntaxError("expected factor", pos_);
    }

    u64 parse_power() {
        const std::size_t at = pos_;
        const u64 e = parse_bounded_uint(kMaxPower, "power exponent");
        if (e == 0) throw SyntaxError("power exponent must be >= 1", at);
        return e;
    }

    void expand_power(Factor& f) {
        if (!consume('^')) return;
        const u64 e = parse_power();
        std::size_t chain = f.node;
        for (u64 i = 1; i < e; ++i) chain = push({ExprNode::Kind::matmul, f.node, chain, 0, 0});
        f.node = chain;
    }
};

}  // namespace

Expression parse_expression(const std::string& text, const FieldContext& ctx) {
    return Parser(text, ctx).run();
}

namespace {

WireRef emit(const Expression& e, std::size_t idx, std::vector<Gate>& gates) {
    const ExprNode& n = e.nodes[idx];
    switch (n.kind) {
        case ExprNode::Kind::input:
            return {true, n.input};
        case ExprNode::Kind::transpose: {
            WireRef a = emit(e, n.a, gates);
            gates.push_back({Gate::Kind::transpose, a, {}, 0});
            return {false, gates.size() - 1};
        }
        case ExprNode::Kind::scalar_mul: {
            WireRef a = emit(e, n.a, gates);
            gates.push_back({Gate::Kind::scalar_mul, a, {}, n.scalar});
            return {false, gates.size() - 1};
        }
        case ExprNode::Kind::add: {
            WireRef b = emit(e, n.b, gates);  // later operands first
            WireRef a = emit(e, n.a, gates);
            gates.push_back({Gate::Kind::add, a, b, 0});
            return {false, gates.size() - 1};
        }
        case ExprNode::Kind::matmul: {
            WireRef b = emit(e, n.b, gates);
            WireRef a = emit(e, n.a, gates);
            gates.push_back({Gate::Kind::matmul, a, b, 0});
            return {false, gates.size() - 1};
        }
    }
    throw Error("unreachable expression node");
}

}  // namespace

Circuit compile(const Expression& expr) {
    Circuit c;
    c.num_inputs = expr.num_inputs;
    c.output = emit(expr, expr.root, c.gates);
    return c;
}

namespace {

Matrix eval_node(const FieldContext& ctx, const Expression& e, std::size_t idx,
                 const std::vector<Matrix>& inputs) {
    const ExprNode& n = e.nodes[idx];
    switch (n.kind) {
        case ExprNode::Kind::input:
            if (n.input >= inputs.size()) {
                throw UnknownInput("expression references X" + std::to_string(n.input + 1) + " but only " +
                                   std::to_string(inputs.size()) + " inputs were provided");
            }
            return inputs[n.input];
        case ExprNode::Kind::transpose:
            return transpose(eval_node(ctx, e, n.a, inputs));
        case ExprNode::Kind::scalar_mul:
            return scale(ctx, eval_node(ctx, e, n.a, inputs), n.scalar);
        case ExprNode::Kind::add:
            return add(ctx, eval_node(ctx, e, n.a, inputs), eval_node(ctx, e, n.b, inputs));
        case ExprNode::Kind::matmul:
            return matmul(ctx, eval_node(ctx, e, n.a, inputs), eval_node(ctx, e, n.b, inputs));
    }
    throw Error("unreachable expression node");
}

}  // namespace

Matrix evaluate_plain(const FieldContext& ctx, const Expression& expr, const std::vector<Matrix>& inputs) {
    if (expr.num_inputs > inputs.size()) {
        throw UnknownInput("expression needs " + std::to_string(expr.num_inputs) + " inputs, got " +
                           std::to_string(inputs.size()));
    }
    return eval_node(ctx, expr, expr.root, inputs);
}

Matrix evaluate_circuit_plain(const FieldContext& ctx, const Circuit& circuit,
                              const std::vector<Matrix>& inputs) {
    if (circuit.num_inputs > inputs.size()) {
        throw UnknownInput("circuit needs " + std::to_string(circuit.num_inputs) + " inputs, got " +
                           std::to_string(inputs.size()));
    }
    std::vector<Matrix> values(circuit.gates.size());
    auto value_of = [&](WireRef ref) -> const Matrix& {
        return ref.is_input ? inputs[ref.idx] : values[ref.idx];
    };
    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        const Gate& gate = circuit.gates[g];
        switch (gate.kind) {
            case Gate::Kind::add:
                values[g] = add(ctx, value_of(gate.a), value_of(gate.b));
                break;
            case Gate::Kind::scalar_mul:
                values[g] = scale(ctx, value_of(gate.a), gate.scalar);
                break;
            case Gate::Kind::matmul:
                values[g] = matmul(ctx, value_of(gate.a), value_of(gate.b));
                break;
            case Gate::Kind::transpose:
                values[g] = transpose(value_of(gate.a));
                break;
        }
    }
    return value_of(circuit.output);
}

std::size_t required_workers(const Circuit& circuit, std::size_t t, std::size_t k) {
    return circuit.has_matmul() ? product_support(k, t).size() : k + t - 1;
}

RoundBudget plan_rounds(const Circuit& circuit, std::size_t k) {
    RoundBudget budget;
    std::vector<bool> flag(circuit.gates.size(), false);
    auto flag_of = [&](WireRef ref) -> bool { return ref.is_input ? false : flag[ref.idx]; };
    auto clear_flag = [&](WireRef ref) {
        if (!ref.is_input) flag[ref.idx] = false;
    };
    auto materialize = [&](WireRef ref) {
        if (flag_of(ref)) {
            ++budget.transpose;
            clear_flag(ref);
        }
    };

    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        const Gate& gate = circuit.gates[g];
        switch (gate.kind) {
            case Gate::Kind::transpose:
                flag[g] = !flag_of(gate.a);
                break;
            case Gate::Kind::scalar_mul:
                flag[g] = flag_of(gate.a);
                break;
            case Gate::Kind::add:
                materialize(gate.a);
                materialize(gate.b);
                flag[g] = false;
                break;
            case Gate::Kind::matmul:
                // Left operand: transposed shares are exactly what the core
                // primitive consumes; otherwise one transpose round.
                if (!flag_of(gate.a)) ++budget.transpose;
                materialize(gate.b);
                if (k > 1) ++budget.change_basis;
                ++budget.multiply;
                flag[g] = false;
                break;
        }
    }
    materialize(circuit.output);
    return budget;
}

ShareBundle evaluate_secure(ProtocolEngine& eng, const Circuit& circuit,
                            const std::vector<ShareBundle>& inputs) {
    const auto& params = eng.params();
    if (circuit.num_inputs > inputs.size()) {
        throw UnknownInput("circuit needs " + std::to_string(circuit.num_inputs) + " input bundles, got " +
                           std::to_string(inputs.size()));
    }
    for (const auto& in : inputs) {
        if (!in.params.same_as(params)) throw ParamMismatch("evaluate_secure: input params mismatch");
        if (in.basis != 1) throw BasisMismatch("evaluate_secure: inputs must be shared in basis 1");
        if (in.transposed) throw BasisMismatch("evaluate_secure: inputs must be direct sharings");
    }
    const std::size_t required = required_workers(circuit, params.t, params.k);
    if (params.n_workers < required) {
        throw TooFewWorkers("evaluate_secure: N=" + std::to_string(params.n_workers) + " workers, need " +
                            std::to_string(required) +
                            (circuit.has_matmul() ? " = min{2k^2+2t-3, k^2+kt+t-2}" : " = k+t-1") +
                            " for k=" + std::to_string(params.k) + ", t=" + std::to_string(params.t));
    }

    std::vector<ShareBundle> input_vals(inputs.begin(), inputs.end());
    std::vector<ShareBundle> gate_vals(circuit.gates.size());
    auto slot = [&](WireRef ref) -> ShareBundle& {
        return ref.is_input ? input_vals[ref.idx] : gate_vals[ref.idx];
    };
    auto materialize = [&](WireRef ref) -> ShareBundle& {
        ShareBundle& s = slot(ref);
        if (s.transposed) {
            ShareBundle direct = transpose_shares(eng, s);
            direct.transposed = false;
            s = std::move(direct);
        }
        return s;
    };

    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        const Gate& gate = circuit.gates[g];
        switch (gate.kind) {
            case Gate::Kind::transpose: {
                ShareBundle v = slot(gate.a);
                v.transposed = !v.transposed;
                if (v.label.size() < 96) v.label = "transpose(" + v.label + ")";
                gate_vals[g] = std::move(v);
                break;
            }
            case Gate::Kind::scalar_mul: {
                gate_vals[g] = scale_shares(eng.ctx(), slot(gate.a), gate.scalar, &eng.counters());
                gate_vals[g].transposed = slot(gate.a).transposed;
                break;
            }
            case Gate::Kind::add: {
                const ShareBundle& va = materialize(gate.a);
                const ShareBundle& vb = materialize(gate.b);
                gate_vals[g] = add_shares(eng.ctx(), va, vb);
                break;
            }
            case Gate::Kind::matmul: {
                // C = P * Q realized as (P^T)^T Q. If P's bundle already holds
                // shares of P^T (transposed flag), consume it directly;
                // otherwise run the transpose procedure first.
                ShareBundle left;
                if (slot(gate.a).transposed) {
                    left = slot(gate.a);
                    left.transposed = false;  // now interpreted as shares of P^T
                } else {
                    left = transpose_shares(eng, slot(gate.a));
                }
                ShareBundle right = materialize(gate.b);
                if (params.k > 1) right = change_basis(eng, right, params.k);
                gate_vals[g] = multiply_shares(eng, left, right, /*out_basis=*/1);
                break;
            }
        }
    }
    ShareBundle out = materialize(circuit.output);
    return out;
}

}  // namespace polyshare
