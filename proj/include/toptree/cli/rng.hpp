#pragma once

#include <cstdint>

namespace toptree::cli {

// xorshift* with 64-bit state; identical seeds replay identical workloads
// byte for byte.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed)
        : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return state * 0x2545f4914f6cdd1dull;
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // uniform in [0, 1)
    double unit() { return double(next() >> 11) * (1.0 / 9007199254740992.0); }
};

} // namespace toptree::cli
