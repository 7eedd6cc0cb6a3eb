#include "sw/prime_field.hpp"

#include <stdexcept>

namespace sw {

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t acc = 1;
    while (e) {
        if (e & 1) acc = mul(acc, a);
        a = mul(a, a);
        e >>= 1;
    }
    return acc;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
    // Extended Euclid on (a, p); coefficients fit in __int128.
    __int128 t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p);
    std::int64_t new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        const __int128 tmp_t = t - static_cast<__int128>(q) * new_t;
        t = new_t;
        new_t = tmp_t;
        const std::int64_t tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    __int128 res = t % static_cast<__int128>(p);
    if (res < 0) res += p;
    return static_cast<std::uint64_t>(res);
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b %
                                      m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t acc = 1;
    a %= m;
    while (e) {
        if (e & 1) acc = mulmod(acc, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return acc;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                            19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                            19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
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

PrimeField random_prime(int bits, Rng& rng) {
    if (bits < 31 || bits > 62)
        throw std::invalid_argument("random_prime: bits must be in [31, 62]");
    const std::uint64_t top = 1ULL << (bits - 1);
    for (;;) {
        const std::uint64_t candidate = top | rng.below(top) | 1ULL;
        if (is_prime_u64(candidate)) return PrimeField{candidate};
    }
}

}  // namespace sw
