#pragma once

#include <cstdint>

namespace cech {

/// Deterministic xorshift64 generator; identical streams on every platform.
struct XorShift64 {
    std::uint64_t state;

    explicit XorShift64(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
    /// Uniform in [lo, hi] inclusive.
    long range(long lo, long hi) { return lo + static_cast<long>(below(hi - lo + 1)); }
};

}  // namespace cech
