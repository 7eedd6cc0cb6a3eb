#pragma once

#include <cstdint>

#include "sw/rng.hpp"

namespace sw {

/// Arithmetic mod an odd prime p with 2^30 < p < 2^63. Residues live in
/// [0, p) as uint64_t.
struct PrimeField {
    std::uint64_t p = 0;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(a) * b % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;  // a != 0

    bool operator==(const PrimeField&) const = default;
};

/// Multiplication by a fixed factor via Shoup's precomputed quotient:
/// two 64x64 multiplies and one conditional subtract, no division. Valid
/// for p < 2^63, which random_prime guarantees.
struct ShoupMul {
    std::uint64_t f;
    std::uint64_t precon;
    std::uint64_t p;

    ShoupMul(std::uint64_t factor, std::uint64_t modulus)
        : f(factor),
          precon(static_cast<std::uint64_t>(
              (static_cast<unsigned __int128>(factor) << 64) / modulus)),
          p(modulus) {}

    std::uint64_t operator()(std::uint64_t x) const {
        const std::uint64_t q = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(precon) * x) >> 64);
        const std::uint64_t r = f * x - q * p;
        return r >= p ? r - p : r;
    }
};

/// Deterministic Miller-Rabin for 64-bit inputs (the 12 smallest prime
/// bases certify all n < 2^64, so there is no error probability).
bool is_prime_u64(std::uint64_t n);

/// Uniform probable prime with exactly `bits` bits, 31 <= bits <= 62.
/// Throws std::invalid_argument outside that range.
PrimeField random_prime(int bits, Rng& rng);

}  // namespace sw
