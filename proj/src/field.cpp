#include "polyshare/field.hpp"

namespace polyshare {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    u64 x = base % m;
    while (exp) {
        if (exp & 1) r = mulmod(r, x, m);
        x = mulmod(x, x, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is a proven deterministic witness set for n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

FieldContext::FieldContext(u64 modulus, u64 default_seed) : p_(modulus), default_seed_(default_seed) {
    if (!is_prime_u64(modulus)) {
        throw NotPrime("field modulus " + std::to_string(modulus) + " is not prime");
    }
}

u64 FieldContext::pow(u64 base, u64 exp) const { return powmod(base % p_, exp, p_); }

u64 FieldContext::inv(u64 a) const {
    a %= p_;
    if (a == 0) throw InverseOfZero();
    return powmod(a, p_ - 2, p_);
}

}  // namespace polyshare
