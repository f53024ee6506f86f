#pragma once

#include <cstdint>

#include "polyshare/field.hpp"

namespace polyshare {

namespace detail {
inline u64 splitmix64(u64 z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
}  // namespace detail

// Counter-based deterministic generator. One stream per (run seed, actor,
// round); streams with different keys are independent, and replaying a run
// with the same seed reproduces every draw bit-for-bit.
class StreamRng {
  public:
    StreamRng(u64 run_seed, u64 actor_id, u64 round)
        : key_(detail::splitmix64(detail::splitmix64(run_seed ^ 0x243f6a8885a308d3ull) ^ actor_id) ^
               detail::splitmix64(round ^ 0x13198a2e03707344ull)) {}

    explicit StreamRng(u64 seed) : StreamRng(seed, 0, 0) {}

    u64 next() { return detail::splitmix64(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

    // Unbiased draw from [0, bound).
    u64 below(u64 bound) {
        u64 threshold = (0 - bound) % bound;
        for (;;) {
            u64 x = next();
            if (x >= threshold) return x % bound;
        }
    }

    u64 field_element(const FieldContext& ctx) { return below(ctx.modulus()); }

  private:
    u64 key_;
    u64 counter_ = 0;
};

}  // namespace polyshare
