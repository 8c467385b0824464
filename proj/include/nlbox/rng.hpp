#pragma once

// Counter-based pseudo-random generator for reproducible box sessions.
//
// Output i for seed s is splitmix64(s + (i+1) * 0x9E3779B97F4A7C15): the
// golden-gamma counter stream with the SplitMix64 finalizer (Steele, Lea &
// Flood 2014). The algorithm is fixed and arithmetic is pure uint64, so
// identical seeds give identical streams on every platform. Draws are a pure
// function of (seed, counter); no hidden state beyond the counter.

#include <cstdint>

namespace nlbox {

struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t counter = 0;

    std::uint64_t next() {
        std::uint64_t z = seed + (++counter) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    int next_bit() { return static_cast<int>(next() >> 63); }

    // Dyadic rational k/2^53 in [0,1): exactly representable, so comparisons
    // against 1/4, 1/2, 3/4 are exact.
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

}  // namespace nlbox
