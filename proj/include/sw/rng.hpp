#pragma once

#include <cstdint>
#include <random>

namespace sw {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Order-sensitive seed combinator; used to derive independent per-task
/// streams from (master seed, shape hash, k, trial, ...).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

/// Deterministic random stream. The engine (mt19937_64) and the rejection
/// sampler below are both fully specified, so replaying a seed reproduces
/// the exact value sequence.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Unbiased uniform draw from [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const int shift = __builtin_clzll(bound - 1);
        const std::uint64_t mask = ~0ULL >> shift;
        for (;;) {
            const std::uint64_t x = engine_() & mask;
            if (x < bound) return x;
        }
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace sw
