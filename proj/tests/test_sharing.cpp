#include <doctest.h>

#include <map>
#include <set>

#include "polyshare/sharing.hpp"

using namespace polyshare;

namespace {

Matrix from_rows(std::vector<std::vector<u64>> rows) {
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
    return m;
}

// Brute-force oracle for the product support: multiply two share polynomials
// with random scalar coefficients symbolically and collect the exponents
// whose coefficient survives.
std::set<u64> brute_force_product_support(const FieldContext& f, std::size_t k, std::size_t t, u64 seed) {
    StreamRng rng(seed);
    auto random_poly = [&](std::size_t basis) {
        std::map<u64, u64> poly;
        for (u64 e : sharing_exponents(basis, t, k)) poly[e] = 1 + rng.below(f.modulus() - 1);
        return poly;
    };
    const auto fa = random_poly(1);
    const auto fb = random_poly(k);
    std::map<u64, u64> product;
    for (const auto& [ea, ca] : fa)
        for (const auto& [eb, cb] : fb) product[ea + eb] = f.add(product[ea + eb], f.mul(ca, cb));
    std::set<u64> support;
    for (const auto& [e, c] : product)
        if (c != 0) support.insert(e);
    return support;
}

SharingParams make_params(const FieldContext& f, std::size_t t, std::size_t k, std::size_t n, u64 seed) {
    SharingParams p;
    p.t = t;
    p.k = k;
    p.n_workers = n;
    p.alphas = sample_alphas(f, n, k, t, seed);
    return p;
}

}  // namespace

TEST_CASE("product support for the worked k=2,t=4 configuration") {
    auto s = product_support(2, 4);
    std::vector<u64> expect;
    for (u64 e = 0; e <= 12; ++e) expect.push_back(e);
    CHECK(s.exponents == expect);  // degree-12 polynomial, no holes
}

TEST_CASE("product support k=2,t=2 has the single hole at 7") {
    auto s = product_support(2, 2);
    CHECK(s.exponents == std::vector<u64>{0, 1, 2, 3, 4, 5, 6, 8});
    CHECK(s.size() == 8);  // = k^2 + kt + t - 2
}

TEST_CASE("product support k=1,t=3 is contiguous") {
    auto s = product_support(1, 3);
    CHECK(s.exponents == std::vector<u64>{0, 1, 2, 3, 4});
}

TEST_CASE("brute-force polynomial multiplication reproduces the support for t >= 2") {
    FieldContext f;  // large modulus keeps accidental cancellation negligible
    for (std::size_t k = 1; k <= 6; ++k) {
        for (std::size_t t = 2; t <= 6; ++t) {
            auto s = product_support(k, t);
            std::set<u64> brute = brute_force_product_support(f, k, t, 1000 + 10 * k + t);
            CHECK(std::set<u64>(s.exponents.begin(), s.exponents.end()) == brute);

            // Zero-coefficient count over [0, 2k^2+2t-4].
            const u64 slots = 2 * k * k + 2 * t - 3;
            const u64 zeros = slots - s.size();
            if (k >= t) {
                CHECK(zeros == (k - t + 1) * (k - 1));
            } else {
                CHECK(zeros == 0);
            }
        }
    }
}

TEST_CASE("t=1 sharings carry no masks so the product support collapses to k^2") {
    // The counting formula implicitly assumes t >= 2: with no mask terms the
    // real product has exactly k^2 nonzero coefficients, while the formula
    // window keeps k-1 extra slots. The support set keeps the formula window
    // (harmless for reconstruction; the extra coefficients are simply zero).
    FieldContext f;
    for (std::size_t k = 1; k <= 6; ++k) {
        auto s = product_support(k, 1);
        CHECK(s.size() == k * k + k - 1);
        std::set<u64> brute = brute_force_product_support(f, k, 1, 77 + k);
        CHECK(brute.size() == k * k);
        for (u64 e : brute) {
            CHECK(std::binary_search(s.exponents.begin(), s.exponents.end(), e));
        }
    }
}

TEST_CASE("coefficient index maps the block grid onto the low exponents") {
    CHECK(coefficient_index(0, 0, 2) == 0);
    CHECK(coefficient_index(1, 1, 2) == 3);  // A_2^T B_2 sits at exponent 3 when k=2
    std::set<u64> seen;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) seen.insert(coefficient_index(i, j, 3));
    CHECK(seen == std::set<u64>{0, 1, 2, 3, 4, 5, 6, 7, 8});
    CHECK_THROWS_AS(coefficient_index(2, 0, 2), IndexOutOfRange);
}

TEST_CASE("alpha sampling fails by pigeonhole on tiny fields") {
    FieldContext f(3);
    CHECK_THROWS_AS(sample_alphas(f, 5, 1, 2, 1), AlphaSamplingExhausted);
}

TEST_CASE("alpha sampling produces verified points") {
    FieldContext f(10007);
    auto alphas = sample_alphas(f, 8, 2, 2, 99);
    REQUIRE(alphas.size() == 8);
    std::set<u64> uniq(alphas.begin(), alphas.end());
    CHECK(uniq.size() == 8);
    CHECK(uniq.count(0) == 0);

    // Determinant oracle: an independent Gaussian-elimination determinant
    // re-verifies the product-support matrix really is invertible.
    auto support = product_support(2, 2);
    std::vector<std::vector<u64>> m(8, std::vector<u64>(8));
    for (std::size_t n = 0; n < 8; ++n)
        for (std::size_t i = 0; i < 8; ++i) m[n][i] = f.pow(alphas[n], support.exponents[i]);
    u64 det = 1;
    for (std::size_t col = 0; col < 8; ++col) {
        std::size_t pivot = col;
        while (pivot < 8 && m[pivot][col] == 0) ++pivot;
        REQUIRE(pivot < 8);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = f.neg(det);
        }
        det = f.mul(det, m[col][col]);
        const u64 inv = f.inv(m[col][col]);
        for (std::size_t r = col + 1; r < 8; ++r) {
            const u64 factor = f.mul(m[r][col], inv);
            for (std::size_t c = col; c < 8; ++c) m[r][c] = f.sub(m[r][c], f.mul(factor, m[col][c]));
        }
    }
    CHECK(det != 0);
}

TEST_CASE("k=1 alpha sampling accepts any distinct nonzero points") {
    FieldContext f(7);
    auto alphas = sample_alphas(f, 3, 1, 2, 5);
    CHECK(alphas.size() == 3);
}

TEST_CASE("k=1 sharing is Shamir sharing of the whole matrix") {
    FieldContext f(101);
    StreamRng data_rng(12);
    Matrix a = Matrix::random(f, 2, 2, data_rng);
    StreamRng rng(13);
    const std::size_t t = 3;
    SharePolynomial poly = make_share_polynomial(f, a, 1, t, 1, rng);
    REQUIRE(poly.data.size() == 1);
    REQUIRE(poly.masks.size() == t - 1);
    CHECK(poly.exponents() == std::vector<u64>{0, 1, 2});
    // F(alpha) = A + R_1 alpha + R_2 alpha^2, computed by hand
    const u64 alpha = 17;
    Matrix expect = a;
    add_in_place(f, expect, scale(f, poly.masks[0], alpha));
    add_in_place(f, expect, scale(f, poly.masks[1], f.mul(alpha, alpha)));
    CHECK(poly.evaluate(f, alpha) == expect);
}

TEST_CASE("t=1 share evaluation matches the hand-computed example") {
    FieldContext f(101);
    Matrix a = from_rows({{1, 2}, {3, 4}});
    StreamRng rng(1);
    SharePolynomial poly = make_share_polynomial(f, a, 1, 1, 2, rng);
    CHECK(poly.masks.empty());
    CHECK(poly.evaluate(f, 5) == from_rows({{11}, {23}}));  // A_1 + 5 A_2
}

TEST_CASE("same seed reproduces a bundle; different seeds reconstruct the same matrix") {
    FieldContext f;
    auto params = make_params(f, 2, 2, 8, 21);
    StreamRng data_rng(22);
    Matrix a = Matrix::random(f, 4, 4, data_rng);

    StreamRng r1(33, 1, 2), r2(33, 1, 2), r3(34, 1, 2);
    auto b1 = share_matrix(f, a, 1, params, r1, "A");
    auto b2 = share_matrix(f, a, 1, params, r2, "A");
    auto b3 = share_matrix(f, a, 1, params, r3, "A");
    CHECK(b1.shares == b2.shares);
    CHECK(b1.shares != b3.shares);
    CHECK(reconstruct(f, b1) == a);
    CHECK(reconstruct(f, b3) == a);
}

TEST_CASE("share/reconstruct round-trip over the (k,t) grid") {
    FieldContext f;
    StreamRng rng(40);
    const std::size_t m = 6;
    int instance = 0;
    for (std::size_t k = 1; k <= 3; ++k) {
        for (std::size_t t = 1; t <= 3; ++t) {
            const std::size_t n = k + t - 1 + 2;  // a couple of spare workers
            auto params = make_params(f, t, k, n, 50 + instance);
            for (int rep = 0; rep < 12; ++rep) {
                Matrix a = Matrix::random(f, m, m, rng);
                const std::size_t b = 1 + rng.below(k);
                StreamRng srng(60 + instance, rep, 0);
                auto bundle = share_matrix(f, a, b, params, srng, "A");
                CHECK(reconstruct(f, bundle) == a);

                // Any subset of size k+t-1 works, not only the canonical one.
                std::vector<std::size_t> subset;
                std::set<u64> picked;
                while (picked.size() < k + t - 1) picked.insert(rng.below(n));
                for (u64 p : picked) subset.push_back(static_cast<std::size_t>(p));
                CHECK(reconstruct_subset(f, bundle, subset) == a);
                ++instance;
            }
        }
    }
}

TEST_CASE("t=1,k=1 single share is the matrix itself") {
    FieldContext f(101);
    SharingParams params{1, 1, 1, {42}};
    Matrix a = from_rows({{9, 8}, {7, 6}});
    StreamRng rng(70);
    auto bundle = share_matrix(f, a, 1, params, rng, "A");
    CHECK(bundle.shares[0] == a);
    CHECK(reconstruct(f, bundle) == a);
}

TEST_CASE("too few shares are rejected") {
    FieldContext f;
    auto params = make_params(f, 2, 2, 8, 80);
    StreamRng data_rng(81), srng(82);
    Matrix a = Matrix::random(f, 4, 4, data_rng);
    auto bundle = share_matrix(f, a, 1, params, srng, "A");
    CHECK_THROWS_AS(reconstruct_subset(f, bundle, {0, 1}), NotEnoughShares);  // k+t-2 shares
}

TEST_CASE("bad basis is rejected") {
    FieldContext f;
    auto params = make_params(f, 2, 2, 8, 90);
    StreamRng rng(91);
    Matrix a(4, 4);
    CHECK_THROWS_AS(share_matrix(f, a, 0, params, rng, "A"), BadBasis);
    CHECK_THROWS_AS(share_matrix(f, a, 3, params, rng, "A"), BadBasis);
}

TEST_CASE("pointwise bundle sum is the sharing of the sum with summed masks") {
    FieldContext f;
    auto params = make_params(f, 3, 2, 8, 100);
    StreamRng rng(101);
    Matrix a = Matrix::random(f, 4, 4, rng);
    Matrix b = Matrix::random(f, 4, 4, rng);

    StreamRng ra(102), rb(103);
    SharePolynomial pa = make_share_polynomial(f, a, 1, params.t, params.k, ra);
    SharePolynomial pb = make_share_polynomial(f, b, 1, params.t, params.k, rb);

    SharePolynomial sum;
    sum.b = 1;
    sum.t = params.t;
    sum.k = params.k;
    for (std::size_t j = 0; j < pa.data.size(); ++j) sum.data.push_back(add(f, pa.data[j], pb.data[j]));
    for (std::size_t j = 0; j < pa.masks.size(); ++j) sum.masks.push_back(add(f, pa.masks[j], pb.masks[j]));

    for (u64 alpha : params.alphas) {
        CHECK(add(f, pa.evaluate(f, alpha), pb.evaluate(f, alpha)) == sum.evaluate(f, alpha));
    }
    CHECK(concat_columns(partition_columns(add(f, a, b), params.k).blocks) == add(f, a, b));
}

TEST_CASE("exhaustive uniformity of shares on a tiny field") {
    // k=1, m=1: enumerate every mask draw and check the joint distribution of
    // any t-1 shares is exactly uniform, for every secret.
    FieldContext f(5);
    const u64 p = 5;

    // t=2: one mask, one observed worker; share = a + r*alpha
    for (u64 alpha : {1ull, 2ull, 3ull, 4ull}) {
        for (u64 a = 0; a < p; ++a) {
            std::vector<int> hits(p, 0);
            for (u64 r = 0; r < p; ++r) ++hits[f.add(a, f.mul(r, alpha))];
            for (u64 v = 0; v < p; ++v) CHECK(hits[v] == 1);
        }
    }

    // t=3: two masks, two observed workers; the pair of shares must sweep
    // F_5^2 exactly once as (r1, r2) does.
    const u64 a1 = 2, a2 = 3;
    for (u64 a = 0; a < p; ++a) {
        std::vector<int> hits(p * p, 0);
        for (u64 r1 = 0; r1 < p; ++r1) {
            for (u64 r2 = 0; r2 < p; ++r2) {
                const u64 s1 = f.add(a, f.add(f.mul(r1, a1), f.mul(r2, f.mul(a1, a1))));
                const u64 s2 = f.add(a, f.add(f.mul(r1, a2), f.mul(r2, f.mul(a2, a2))));
                ++hits[s1 * p + s2];
            }
        }
        for (std::size_t i = 0; i < hits.size(); ++i) CHECK(hits[i] == 1);
    }
}

TEST_CASE("mask-window matrices are invertible for every t-1 subset of sampled alphas") {
    FieldContext f(10007);
    auto params = make_params(f, 3, 2, 6, 110);
    const u64 k2 = 4;
    for (std::size_t i = 0; i < params.n_workers; ++i) {
        for (std::size_t j = i + 1; j < params.n_workers; ++j) {
            CHECK(is_invertible_vandermonde(f, {params.alphas[i], params.alphas[j]}, {k2, k2 + 1}));
        }
    }
}
