#pragma once

#include <cstdint>

namespace antiram {

// SplitMix64 (Steele, Lea & Flood): a counter advancing by the 64-bit
// golden-ratio increment, pushed through a fixed avalanche finalizer.
// All randomized operations in this toolkit draw from it so that a single
// recorded seed reproduces a run bit-for-bit.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound >= 1. Rejection sampling, no modulo bias.
    std::uint64_t bounded(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t x = next();
            if (x >= threshold)
                return x % bound;
        }
    }

    bool coin() { return (next() & 1) != 0; }

private:
    std::uint64_t state_;
};

// Independent stream for a sub-task of a seeded run (one per tournament,
// per sample batch, ...). Distinct streams give unrelated sequences.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (0x5851f42d4c957f2dULL * (stream + 1)));
    return g.next();
}

}  // namespace antiram
