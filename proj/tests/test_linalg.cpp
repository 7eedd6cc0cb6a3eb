#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "support/oracles.hpp"
#include "sw/matrix.hpp"
#include "sw/prime_field.hpp"
#include "sw/rng.hpp"

using namespace sw;

namespace {

const PrimeField kField{2147483647};  // 2^31 - 1

PrimeFieldMatrix from_ints(const std::vector<std::vector<long>>& rows,
                           PrimeField f = kField) {
    PrimeFieldMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), f);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            long v = rows[i][j] % static_cast<long>(f.p);
            if (v < 0) v += static_cast<long>(f.p);
            m(i, j) = static_cast<std::uint64_t>(v);
        }
    return m;
}

std::vector<std::vector<long>> random_int_matrix(Rng& rng, std::size_t r,
                                                 std::size_t c, long lo,
                                                 long hi) {
    std::vector<std::vector<long>> rows(r, std::vector<long>(c));
    for (auto& row : rows)
        for (auto& v : row)
            v = lo + static_cast<long>(
                         rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
    return rows;
}

bool is_zero_product(const PrimeFieldMatrix& m, const PrimeFieldMatrix& ker) {
    if (ker.rows() == 0) return true;
    const PrimeFieldMatrix prod = multiply(m, transpose(ker));
    for (std::size_t i = 0; i < prod.rows(); ++i)
        for (std::size_t j = 0; j < prod.cols(); ++j)
            if (prod(i, j) != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("rank of identity and zero matrices") {
    CHECK(rank(PrimeFieldMatrix::identity(5, kField)) == 5);
    CHECK(rank(PrimeFieldMatrix(3, 7, kField)) == 0);
}

TEST_CASE("rank matches the rational elimination oracle") {
    Rng rng(1);
    for (int it = 0; it < 20; ++it) {
        const auto rows = random_int_matrix(rng, 20, 20, -50, 50);
        CHECK(rank(from_ints(rows)) == oracle::rational_rank(rows));
    }
}

TEST_CASE("rank vs rational oracle, 200 random rectangular cases") {
    Rng rng(2);
    for (int it = 0; it < 200; ++it) {
        const std::size_t r = 1 + rng.below(30);
        const std::size_t c = 1 + rng.below(30);
        // small entries and a 31-bit prime: mod-p rank equals the rank
        // over the rationals
        const auto rows = random_int_matrix(rng, r, c, -10, 10);
        const long gf = rank(from_ints(rows));
        const long qq = oracle::rational_rank(rows);
        REQUIRE(gf == qq);
    }
}

TEST_CASE("low rank products are detected exactly") {
    // rank over GF(p) can never exceed the rational rank
    Rng rng(3);
    for (int it = 0; it < 20; ++it) {
        // build a rank <= 3 integer matrix as a product of 12x3 and 3x12
        const auto a = random_int_matrix(rng, 12, 3, -6, 6);
        const auto b = random_int_matrix(rng, 3, 12, -6, 6);
        std::vector<std::vector<long>> prod(12, std::vector<long>(12, 0));
        for (int i = 0; i < 12; ++i)
            for (int k = 0; k < 3; ++k)
                for (int j = 0; j < 12; ++j)
                    prod[i][j] += a[i][k] * b[k][j];
        const long gf = rank(from_ints(prod));
        CHECK(gf == oracle::rational_rank(prod));
        CHECK(gf <= 3);
    }
}

TEST_CASE("nullspace of (1, 1) over GF(101)") {
    const PrimeField f101{101};
    const PrimeFieldMatrix m = from_ints({{1, 1}}, f101);
    const PrimeFieldMatrix ker = nullspace(m);
    REQUIRE(ker.rows() == 1);
    REQUIRE(ker.cols() == 2);
    CHECK(is_zero_product(m, ker));
    // forced up to scalar: proportional to (1, 100)
    CHECK(ker(0, 1) == f101.mul(ker(0, 0), 100));
}

TEST_CASE("full column rank has an empty nullspace") {
    const PrimeFieldMatrix m = from_ints({{1, 0}, {0, 1}, {4, 5}});
    CHECK(nullspace(m).rows() == 0);
}

TEST_CASE("nullspace rows annihilate and count the corank") {
    Rng rng(4);
    for (int it = 0; it < 25; ++it) {
        const auto rows = random_int_matrix(rng, 10, 16, -100, 100);
        const PrimeFieldMatrix m = from_ints(rows);
        const PrimeFieldMatrix ker = nullspace(m);
        CHECK(static_cast<long>(ker.rows()) == 16 - rank(m));
        CHECK(is_zero_product(m, ker));
        // returned rows are linearly independent
        CHECK(rank(ker) == static_cast<long>(ker.rows()));
    }
}

TEST_CASE("rank is invariant under transpose") {
    Rng rng(5);
    for (int it = 0; it < 30; ++it) {
        const std::size_t r = 1 + rng.below(25);
        const std::size_t c = 1 + rng.below(25);
        const PrimeFieldMatrix m =
            from_ints(random_int_matrix(rng, r, c, -30, 30));
        CHECK(rank(m) == rank(transpose(m)));
    }
}

TEST_CASE("elimination is total on degenerate inputs") {
    CHECK(rank(PrimeFieldMatrix(0, 0, kField)) == 0);
    CHECK(rank(PrimeFieldMatrix(0, 5, kField)) == 0);
    CHECK(rank(PrimeFieldMatrix(5, 0, kField)) == 0);
    CHECK(nullspace(PrimeFieldMatrix(0, 4, kField)).rows() == 4);
    const PrimeFieldMatrix singular = from_ints({{1, 2}, {2, 4}});
    CHECK(rank(singular) == 1);
}

TEST_CASE("incremental rank agrees with batch rank") {
    Rng rng(6);
    for (int it = 0; it < 30; ++it) {
        const std::size_t r = 1 + rng.below(20);
        const std::size_t c = 1 + rng.below(12);
        const PrimeFieldMatrix m =
            from_ints(random_int_matrix(rng, r, c, -40, 40));
        IncrementalRank inc(c, kField);
        for (std::size_t i = 0; i < m.rows(); ++i) inc.feed(m.row(i));
        CHECK(inc.rank() == rank(m));
    }
}

TEST_CASE("random primes: width, primality, determinism") {
    Rng rng1(1), rng2(1);
    const PrimeField a = random_prime(31, rng1);
    const PrimeField b = random_prime(31, rng2);
    CHECK(a.p == b.p);  // same seed, same prime
    CHECK(a.p >= (1ULL << 30));
    CHECK(a.p < (1ULL << 31));
    CHECK(oracle::trial_division_prime(a.p));

    Rng rng3(2);
    const PrimeField c = random_prime(31, rng3);
    CHECK(oracle::trial_division_prime(c.p));

    Rng rng4(3);
    const PrimeField wide = random_prime(62, rng4);
    CHECK(wide.p >= (1ULL << 61));
    CHECK(is_prime_u64(wide.p));

    CHECK_THROWS_AS(random_prime(30, rng4), std::invalid_argument);
    CHECK_THROWS_AS(random_prime(63, rng4), std::invalid_argument);
}

TEST_CASE("field primitives round-trip") {
    Rng rng(7);
    const PrimeField f = random_prime(62, rng);
    for (int it = 0; it < 200; ++it) {
        const std::uint64_t a = 1 + rng.below(f.p - 1);
        CHECK(f.mul(a, f.inv(a)) == 1);
        const std::uint64_t b = rng.below(f.p);
        const ShoupMul scale(a, f.p);
        CHECK(scale(b) == f.mul(a, b));
        CHECK(f.add(f.sub(b, a), a) == b);
        CHECK(f.pow(a, 3) == f.mul(a, f.mul(a, a)));
    }
}
