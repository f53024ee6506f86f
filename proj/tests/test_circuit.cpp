#include <doctest.h>

#include "polyshare/analytics.hpp"
#include "polyshare/circuit.hpp"

using namespace polyshare;

namespace {

const FieldContext& field() {
    static FieldContext f;
    return f;
}

Circuit compile_text(const std::string& text) { return compile(parse_expression(text, field())); }

SharingParams make_params(std::size_t t, std::size_t k, std::size_t n, u64 seed = 7) {
    SharingParams p;
    p.t = t;
    p.k = k;
    p.n_workers = n;
    p.alphas = sample_alphas(field(), n, k, t, seed);
    return p;
}

std::vector<ShareBundle> share_all(const SharingParams& params, const std::vector<Matrix>& inputs,
                                   u64 seed) {
    std::vector<ShareBundle> bundles;
    for (std::size_t g = 0; g < inputs.size(); ++g) {
        StreamRng rng(seed, g, 0);
        bundles.push_back(share_matrix(field(), inputs[g], 1, params, rng, "X" + std::to_string(g + 1)));
    }
    return bundles;
}

// Random expression generator: sums of up to 4 monomials over up to 5 inputs,
// factors may be transposed, scaled, or parenthesized subexpressions.
std::string random_expression(StreamRng& rng, std::size_t max_inputs, std::size_t depth = 0) {
    const std::size_t monomials = 1 + rng.below(depth == 0 ? 4 : 2);
    std::string text;
    for (std::size_t m = 0; m < monomials; ++m) {
        if (m) text += rng.below(4) == 0 ? " - " : " + ";
        const std::size_t factors = 1 + rng.below(depth == 0 ? 4 : 2);
        if (rng.below(5) == 0) text += std::to_string(rng.below(97)) + " * ";
        for (std::size_t i = 0; i < factors; ++i) {
            if (i) text += " * ";
            if (depth < 2 && rng.below(6) == 0) {
                text += "(" + random_expression(rng, max_inputs, depth + 2) + ")";
            } else {
                text += "X" + std::to_string(1 + rng.below(max_inputs));
            }
            if (rng.below(3) == 0) text += "'";
        }
    }
    return text;
}

}  // namespace

TEST_CASE("parsing the two-monomial worked expression") {
    Expression e = parse_expression("X2' * X1 * X1 * X3 + X2 * X4 * X3'", field());
    CHECK(e.num_inputs == 4);
    REQUIRE(e.nodes[e.root].kind == ExprNode::Kind::add);
    // first monomial: transpose on X2, two inner products
    const ExprNode& m1 = e.nodes[e.nodes[e.root].a];
    CHECK(m1.kind == ExprNode::Kind::matmul);
    CHECK(e.nodes[m1.a].kind == ExprNode::Kind::transpose);
}

TEST_CASE("simple sums and errors") {
    Expression e = parse_expression("X1 + X1", field());
    CHECK(e.nodes[e.root].kind == ExprNode::Kind::add);
    CHECK(e.num_inputs == 1);

    CHECK_THROWS_AS(parse_expression("X1 *", field()), SyntaxError);
    CHECK_THROWS_AS(parse_expression("", field()), SyntaxError);
    CHECK_THROWS_AS(parse_expression("X1 + + X2", field()), SyntaxError);
    CHECK_THROWS_AS(parse_expression("(X1", field()), SyntaxError);
    CHECK_THROWS_AS(parse_expression("X1 X2", field()), SyntaxError);
    CHECK_THROWS_AS(parse_expression("X0", field()), UnknownInput);
    CHECK_THROWS_AS(parse_expression("3 + X1", field()), SyntaxError);  // scalar-only monomial
    CHECK_THROWS_AS(parse_expression("X1 ^ 0", field()), SyntaxError);
    CHECK_THROWS_AS(parse_expression("X1 ^ 65", field()), SyntaxError);       // power cap
    CHECK_THROWS_AS(parse_expression("X1000002", field()), SyntaxError);      // index cap, no wrapping
}

TEST_CASE("syntax errors carry the offending position") {
    try {
        parse_expression("X1 * %", field());
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.position == 5);
    }
}

TEST_CASE("a pure product compiles to right-to-left chained matmuls") {
    Circuit c = compile_text("X1 * X2 * X3 * X4");
    REQUIRE(c.gates.size() == 3);
    // first gate multiplies the last two inputs
    CHECK(c.gates[0].kind == Gate::Kind::matmul);
    CHECK(c.gates[0].a == WireRef{true, 2});
    CHECK(c.gates[0].b == WireRef{true, 3});
    CHECK(c.gates[1].a == WireRef{true, 1});
    CHECK(c.gates[1].b == WireRef{false, 0});
    CHECK(c.gates[2].a == WireRef{true, 0});
    CHECK(c.gates[2].b == WireRef{false, 1});
    CHECK(c.output == WireRef{false, 2});
}

TEST_CASE("a pure sum compiles to right-to-left chained adds") {
    Circuit c = compile_text("X1 + X2 + X3");
    REQUIRE(c.gates.size() == 2);
    CHECK(c.gates[0].kind == Gate::Kind::add);
    CHECK(c.gates[0].a == WireRef{true, 1});
    CHECK(c.gates[0].b == WireRef{true, 2});
    CHECK(c.gates[1].a == WireRef{true, 0});
    CHECK(c.gates[1].b == WireRef{false, 0});
}

TEST_CASE("a bare input compiles to zero gates") {
    Circuit c = compile_text("X1");
    CHECK(c.gates.empty());
    CHECK(c.output == WireRef{true, 0});
}

TEST_CASE("compilation is deterministic") {
    const std::string text = "X2' * X1 * X1 * X3 + X2 * X4 * X3'";
    Circuit c1 = compile_text(text), c2 = compile_text(text);
    CHECK(c1.gates == c2.gates);
    CHECK(c1.output == c2.output);
}

TEST_CASE("plain evaluation: inverse sum cancels") {
    StreamRng rng(1);
    Matrix a = Matrix::random(field(), 3, 3, rng);
    Expression e = parse_expression("X1 + X2", field());
    Matrix neg = scale(field(), a, field().modulus() - 1);
    CHECK(evaluate_plain(field(), e, {a, neg}) == Matrix(3, 3));
    CHECK(evaluate_plain(field(), parse_expression("X1 - X1", field()), {a}) == Matrix(3, 3));
}

TEST_CASE("subtraction binds to its own term only") {
    StreamRng rng(12);
    Matrix a = Matrix::random(field(), 3, 3, rng);
    Matrix b = Matrix::random(field(), 3, 3, rng);
    Matrix c = Matrix::random(field(), 3, 3, rng);
    // a - b + c, not a - (b + c)
    Expression e = parse_expression("X1 - X2 + X3", field());
    Matrix expect = add(field(), sub(field(), a, b), c);
    CHECK(evaluate_plain(field(), e, {a, b, c}) == expect);

    Expression e2 = parse_expression("X1 - X2 - X3", field());
    CHECK(evaluate_plain(field(), e2, {a, b, c}) == sub(field(), sub(field(), a, b), c));
}

TEST_CASE("pathological nesting is rejected instead of overflowing") {
    std::string text(500, '(');
    text += "X1";
    text += std::string(500, ')');
    CHECK_THROWS_AS(parse_expression(text, field()), SyntaxError);
}

TEST_CASE("plain AST evaluation matches gate-by-gate circuit folding") {
    StreamRng rng(2);
    for (int trial = 0; trial < 40; ++trial) {
        const std::string text = random_expression(rng, 5);
        Expression e = parse_expression(text, field());
        Circuit c = compile(e);
        std::vector<Matrix> inputs;
        for (std::size_t g = 0; g < 5; ++g) inputs.push_back(Matrix::random(field(), 3, 3, rng));
        CHECK(evaluate_plain(field(), e, inputs) == evaluate_circuit_plain(field(), c, inputs));
    }
}

TEST_CASE("scalar 1x1 case agrees with direct scalar arithmetic") {
    Expression e = parse_expression("X1' * X2 + 3 * X3", field());
    Matrix a(1, 1), b(1, 1), c(1, 1);
    a.at(0, 0) = 11;
    b.at(0, 0) = 13;
    c.at(0, 0) = 17;
    Matrix out = evaluate_plain(field(), e, {a, b, c});
    CHECK(out.at(0, 0) == field().add(field().mul(11, 13), field().mul(3, 17)));
}

TEST_CASE("power sugar expands to repeated products") {
    StreamRng rng(3);
    Matrix a = Matrix::random(field(), 3, 3, rng);
    Matrix b = Matrix::random(field(), 3, 3, rng);
    Expression square = parse_expression("X1^2", field());
    Expression repeated = parse_expression("X1 * X1", field());
    CHECK(evaluate_plain(field(), square, {a}) == evaluate_plain(field(), repeated, {a}));
    Expression mixed = parse_expression("X1^3 * X2", field());
    Expression expanded = parse_expression("X1 * X1 * X1 * X2", field());
    CHECK(evaluate_plain(field(), mixed, {a, b}) == evaluate_plain(field(), expanded, {a, b}));
}

TEST_CASE("missing inputs are reported") {
    Expression e = parse_expression("X1 + X3", field());
    StreamRng rng(4);
    Matrix a = Matrix::random(field(), 2, 2, rng);
    CHECK_THROWS_AS(evaluate_plain(field(), e, {a, a}), UnknownInput);
}

TEST_CASE("round planning matches the evaluation dispatch") {
    // transpose-left bypass: X1' * X2 spends no transpose round on X1
    RoundBudget b1 = plan_rounds(compile_text("X1' * X2"), 2);
    CHECK(b1.multiply == 1);
    CHECK(b1.transpose == 0);
    CHECK(b1.change_basis == 1);

    // un-transposed left operand costs one transpose round
    RoundBudget b2 = plan_rounds(compile_text("X1 * X2"), 2);
    CHECK(b2.multiply == 1);
    CHECK(b2.transpose == 1);
    CHECK(b2.change_basis == 1);

    // k=1 needs no basis conversion
    RoundBudget b3 = plan_rounds(compile_text("X1' * X2"), 1);
    CHECK(b3.change_basis == 0);

    // a transposed right operand must be materialized first
    RoundBudget b4 = plan_rounds(compile_text("X1' * X2'"), 2);
    CHECK(b4.transpose == 1);

    // add consumes direct representations; a dangling transpose output
    // is materialized at the output
    RoundBudget b5 = plan_rounds(compile_text("X1' + X2"), 2);
    CHECK(b5.multiply == 0);
    CHECK(b5.transpose == 1);
    RoundBudget b6 = plan_rounds(compile_text("X1'"), 2);
    CHECK(b6.transpose == 1);
}

TEST_CASE("secure evaluation equals plain evaluation on the worked example") {
    const std::size_t t = 2, k = 2, m = 4;
    Circuit c = compile_text("X2' * X1 * X1 * X3 + X2 * X4 * X3'");
    auto params = make_params(t, k, required_workers(c, t, k), 11);

    StreamRng rng(5);
    std::vector<Matrix> inputs;
    for (int g = 0; g < 4; ++g) inputs.push_back(Matrix::random(field(), m, m, rng));

    ProtocolEngine eng(field(), params, m, 99);
    ShareBundle out = evaluate_secure(eng, c, share_all(params, inputs, 98));
    Expression e = parse_expression("X2' * X1 * X1 * X3 + X2 * X4 * X3'", field());
    CHECK(reconstruct(field(), out) == evaluate_plain(field(), e, inputs));
}

TEST_CASE("secure evaluation of the identity circuit") {
    const std::size_t t = 2, k = 2, m = 4;
    auto params = make_params(t, k, k + t - 1, 12);
    StreamRng rng(6);
    std::vector<Matrix> inputs{Matrix::random(field(), m, m, rng)};
    ProtocolEngine eng(field(), params, m, 1);
    ShareBundle out = evaluate_secure(eng, compile_text("X1"), share_all(params, inputs, 2));
    CHECK(reconstruct(field(), out) == inputs[0]);
    CHECK(eng.counters().inter_worker == 0);
}

TEST_CASE("secure vs plain on random circuits across (k,t)") {
    struct Config {
        std::size_t k, t;
    };
    StreamRng rng(7);
    for (Config cfg : {Config{1, 2}, Config{2, 2}, Config{2, 3}}) {
        const std::size_t m = 4;
        for (int trial = 0; trial < 25; ++trial) {
            const std::string text = random_expression(rng, 5);
            Expression e = parse_expression(text, field());
            Circuit c = compile(e);
            auto params = make_params(cfg.t, cfg.k, required_workers(c, cfg.t, cfg.k),
                                      1000 + trial * 7 + cfg.k * 31 + cfg.t);
            std::vector<Matrix> inputs;
            for (std::size_t g = 0; g < 5; ++g) inputs.push_back(Matrix::random(field(), m, m, rng));

            ProtocolEngine eng(field(), params, m, 3000 + trial);
            ShareBundle out = evaluate_secure(eng, c, share_all(params, inputs, 4000 + trial));
            Matrix expect = evaluate_plain(field(), e, inputs);
            REQUIRE_MESSAGE(reconstruct(field(), out) == expect, "expression: ", text);

            // measured rounds match the planned budget
            CHECK(eng.counters().per_round_inter_worker.size() == plan_rounds(c, cfg.k).total());
        }
    }
}

TEST_CASE("structured operands feed the multiply correctly") {
    const std::size_t t = 2, k = 2, m = 4;
    StreamRng rng(9);
    std::vector<Matrix> inputs;
    for (int g = 0; g < 3; ++g) inputs.push_back(Matrix::random(field(), m, m, rng));

    // transposed sums, parenthesized products, and scalar coefficients in
    // every operand position of a product
    for (const char* text : {
             "X1 * (X2 + X3)",
             "(X1 + X2)' * X3",
             "(X1 * X2)' * X3",
             "X1' * (X2 * X3)'",
             "2 * X1' * (X2 - 3 * X3)",
             "(X1' * X2)' + X3'",
         }) {
        Expression e = parse_expression(text, field());
        Circuit c = compile(e);
        auto params = make_params(t, k, required_workers(c, t, k), 31);
        ProtocolEngine eng(field(), params, m, 32);
        ShareBundle out = evaluate_secure(eng, c, share_all(params, inputs, 33));
        REQUIRE_MESSAGE(reconstruct(field(), out) == evaluate_plain(field(), e, inputs),
                        "expression: ", text);
        CHECK(eng.counters().per_round_inter_worker.size() == plan_rounds(c, k).total());
    }
}

TEST_CASE("required workers depend on the gate mix, never on depth") {
    const std::size_t t = 3, k = 2;
    Circuit once = compile_text("X1' * X2");
    Circuit deep = compile_text("X3' * X1' * X2");
    Circuit linear = compile_text("X1 + X2 + X3");
    CHECK(required_workers(once, t, k) == required_workers(deep, t, k));
    CHECK(required_workers(once, t, k) == product_support(k, t).size());
    CHECK(required_workers(linear, t, k) == k + t - 1);
}

TEST_CASE("one worker short of the bound is rejected with the bound formula") {
    const std::size_t t = 2, k = 2, m = 4;
    Circuit c = compile_text("X1' * X2");
    const std::size_t need = required_workers(c, t, k);
    auto params = make_params(t, k, need - 1, 21);
    StreamRng rng(8);
    std::vector<Matrix> inputs{Matrix::random(field(), m, m, rng), Matrix::random(field(), m, m, rng)};
    ProtocolEngine eng(field(), params, m, 5);
    CHECK_THROWS_WITH_AS(evaluate_secure(eng, c, share_all(params, inputs, 6)),
                         doctest::Contains("min{2k^2+2t-3, k^2+kt+t-2}"), TooFewWorkers);
}
