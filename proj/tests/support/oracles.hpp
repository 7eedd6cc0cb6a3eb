#pragma once

// Test-only oracles, deliberately independent of the library's mod-p
// elimination: exact rational Gaussian elimination for ranks, trial
// division for primality, and a nested-loop shape counter.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace oracle {

/// Rank over Q of an integer matrix, by fraction-free rational elimination.
inline long rational_rank(std::vector<std::vector<long>> rows) {
    if (rows.empty()) return 0;
    const std::size_t m = rows.size();
    const std::size_t n = rows[0].size();
    std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[i][j];
    long rank = 0;
    for (std::size_t col = 0; col < n && rank < static_cast<long>(m);
         ++col) {
        std::size_t piv = m;
        for (std::size_t i = rank; i < m; ++i) {
            if (a[i][col] != 0) {
                piv = i;
                break;
            }
        }
        if (piv == m) continue;
        std::swap(a[rank], a[piv]);
        for (std::size_t i = rank + 1; i < m; ++i) {
            if (a[i][col] == 0) continue;
            const mpq_class f = a[i][col] / a[rank][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

/// Primality by trial division; fine for 64-bit inputs when only used on a
/// handful of values.
inline bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Counts canonical shapes (q >= 3, ascending, product of (a_i+1) <= cap)
/// with an explicit odometer rather than recursion. Each entry is bounded
/// by cap / 2^(q-1) since every other factor contributes at least 2.
inline long count_shapes(long cap) {
    long count = 0;
    for (int q = 3; (1L << q) <= cap; ++q) {
        const long maxd = (cap >> (q - 1)) - 1;
        std::vector<long> dims(q, 1);
        for (;;) {
            long prod = 1;
            bool ok = true;
            for (long a : dims) {
                prod *= a + 1;
                if (prod > cap) {
                    ok = false;
                    break;
                }
            }
            bool ascending = true;
            for (int i = 1; i < q; ++i)
                if (dims[i] < dims[i - 1]) ascending = false;
            if (ok && ascending) ++count;
            int pos = q - 1;
            while (pos >= 0 && dims[pos] == maxd) {
                dims[pos] = 1;
                --pos;
            }
            if (pos < 0) break;
            ++dims[pos];
        }
    }
    return count;
}

}  // namespace oracle
