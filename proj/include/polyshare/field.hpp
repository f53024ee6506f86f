#pragma once

#include <cstdint>

#include "polyshare/errors.hpp"

namespace polyshare {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// 2^61 - 1, a Mersenne prime. Default modulus; any user prime works too.
inline constexpr u64 kDefaultModulus = (u64{1} << 61) - 1;

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime_u64(u64 n);

// Z_p arithmetic. Element values are plain u64 in [0, p); the modulus lives
// here, not on each element.
class FieldContext {
  public:
    explicit FieldContext(u64 modulus = kDefaultModulus, u64 default_seed = 0);

    u64 modulus() const { return p_; }
    u64 default_seed() const { return default_seed_; }

    u64 reduce(u64 a) const { return a % p_; }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;  // p < 2^63, no overflow
        if (s >= p_) s -= p_;
        return s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p_); }
    u64 pow(u64 base, u64 exp) const;
    u64 inv(u64 a) const;

    bool operator==(const FieldContext& o) const { return p_ == o.p_; }

  private:
    u64 p_;
    u64 default_seed_;
};

}  // namespace polyshare
