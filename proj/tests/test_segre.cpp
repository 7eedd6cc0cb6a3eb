#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "sw/matrix.hpp"
#include "sw/segre.hpp"
#include "sw/shape.hpp"

using namespace sw;

namespace {

const PrimeField kField{2147483647};

SegreShape shape(std::initializer_list<long> dims) {
    return SegreShape::canonicalize(std::vector<long>(dims));
}

SegreShape random_small_shape(Rng& rng) {
    const std::size_t q = 2 + rng.below(3);  // 2..4 factors
    std::vector<long> dims(q);
    for (auto& d : dims) d = 1 + static_cast<long>(rng.below(3));
    return SegreShape::canonicalize(dims);
}

AffinePoint with_coords(const SegreShape& s,
                        std::vector<std::vector<std::uint64_t>> coords) {
    return AffinePoint{s, kField, std::move(coords)};
}

std::vector<std::uint64_t> scaled_diff(const PrimeField& f,
                                       const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b,
                                       std::uint64_t inv_scale) {
    std::vector<std::uint64_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = f.mul(f.sub(a[i], b[i]), inv_scale);
    return out;
}

}  // namespace

TEST_CASE("embedding the chart origin gives the 0-indicator") {
    for (auto s : {shape({1, 1, 1}), shape({2, 3, 3}), shape({4})}) {
        const auto v = embed(chart_origin(s, kField));
        REQUIRE(v.size() == s.ambient_points_index());
        CHECK(v[0] == 1);
        for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] == 0);
    }
}

TEST_CASE("embedding of P^1 x P^1 in the documented index order") {
    // full vectors (1, a) and (1, b); last factor fastest
    const auto v = embed(with_coords(shape({1, 1}), {{7}, {11}}));
    CHECK(v == std::vector<std::uint64_t>{1, 11, 7, kField.mul(7, 11)});
}

TEST_CASE("embedding is multilinear in each factor") {
    // embed(p) decomposes as embed(p with block f zeroed) plus the
    // coordinate-weighted derivative rows of factor f, for every f.
    Rng rng(11);
    for (int it = 0; it < 40; ++it) {
        const SegreShape s = random_small_shape(rng);
        const AffinePoint p = random_point(s, kField, rng);
        const auto v = embed(p);
        const PrimeFieldMatrix frame = tangent_frame(p);
        for (std::size_t f = 0; f < s.factor_count(); ++f) {
            AffinePoint zeroed = p;
            std::fill(zeroed.coords[f].begin(), zeroed.coords[f].end(), 0);
            std::vector<std::uint64_t> recombined = embed(zeroed);
            std::size_t row = 1;
            for (std::size_t g = 0; g < f; ++g)
                row += static_cast<std::size_t>(s.dims()[g]);
            for (long d = 0; d < s.dims()[f]; ++d) {
                const std::uint64_t w = p.coords[f][static_cast<std::size_t>(d)];
                for (std::size_t c = 0; c < v.size(); ++c)
                    recombined[c] = kField.add(
                        recombined[c],
                        kField.mul(w, frame(row + static_cast<std::size_t>(d), c)));
            }
            CHECK(recombined == v);
        }
    }
}

TEST_CASE("tangent frame at the origin of (P^1)^3 hits indices 0,1,2,4") {
    const SegreShape s = shape({1, 1, 1});
    const PrimeFieldMatrix frame = tangent_frame(chart_origin(s, kField));
    REQUIRE(frame.rows() == 4);
    REQUIRE(frame.cols() == 8);
    // row 0 -> index 0; factor 1 -> index 4, factor 2 -> 2, factor 3 -> 1
    const std::vector<std::size_t> expect{0, 4, 2, 1};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 8; ++c)
            CHECK(frame(r, c) == (c == expect[r] ? 1u : 0u));
    }
}

TEST_CASE("tangent frame row 0 is the embedded point, rank is n+1") {
    Rng rng(12);
    for (int it = 0; it < 25; ++it) {
        const SegreShape s = random_small_shape(rng);
        const AffinePoint p = random_point(s, kField, rng);
        const PrimeFieldMatrix frame = tangent_frame(p);
        const auto v = embed(p);
        for (std::size_t c = 0; c < v.size(); ++c) CHECK(frame(0, c) == v[c]);
        CHECK(rank(frame) == s.dim() + 1);
    }
}

TEST_CASE("derivative rows are the exact directional derivatives") {
    // embed(p + eps * e_(f,i)) - embed(p) = eps * derivative row, for any
    // eps; evaluate at two field points and compare the interpolated slope.
    Rng rng(13);
    int checked = 0;
    while (checked < 100) {
        const SegreShape s = random_small_shape(rng);
        const AffinePoint p = random_point(s, kField, rng);
        const PrimeFieldMatrix frame = tangent_frame(p);
        const std::size_t f = rng.below(s.factor_count());
        const std::size_t i =
            rng.below(static_cast<std::uint64_t>(s.dims()[f]));
        std::size_t row = 1;
        for (std::size_t g = 0; g < f; ++g)
            row += static_cast<std::size_t>(s.dims()[g]);
        row += i;

        const auto base = embed(p);
        const std::uint64_t e1 = 1 + rng.below(kField.p - 1);
        const std::uint64_t e2 = 1 + rng.below(kField.p - 1);
        if (e1 == e2) continue;
        AffinePoint p1 = p, p2 = p;
        p1.coords[f][i] = kField.add(p1.coords[f][i], e1);
        p2.coords[f][i] = kField.add(p2.coords[f][i], e2);
        const auto d1 =
            scaled_diff(kField, embed(p1), base, kField.inv(e1));
        const auto d2 =
            scaled_diff(kField, embed(p2), base, kField.inv(e2));
        for (std::size_t c = 0; c < base.size(); ++c) {
            REQUIRE(d1[c] == d2[c]);  // degree 1 in eps
            REQUIRE(d1[c] == frame(row, c));
        }
        ++checked;
    }
}

TEST_CASE("terracini matrix sizes and ranks on the small model cases") {
    Rng rng(14);
    {
        const SegreShape s = shape({1, 1, 1});
        const auto pts = sample_points(s, kField, 2, rng);
        const PrimeFieldMatrix m = terracini_matrix(pts);
        CHECK(m.rows() == 8);
        CHECK(m.cols() == 8);
        CHECK(rank(m) == 8);  // S_2 fills P^7
    }
    {
        const SegreShape s = shape({1, 1, 1, 1});
        const auto pts = sample_points(s, kField, 3, rng);
        const PrimeFieldMatrix m = terracini_matrix(pts);
        CHECK(m.rows() == 15);
        CHECK(m.cols() == 16);
        CHECK(rank(m) == 14);  // defective: rank 3 tensors here are special
    }
    {
        const SegreShape s = shape({2, 3, 3});
        const auto pts = sample_points(s, kField, 1, rng);
        CHECK(rank(terracini_matrix(pts)) == s.dim() + 1);
    }
}

TEST_CASE("terracini rank never exceeds min(k(n+1), N+1)") {
    Rng rng(15);
    for (int it = 0; it < 20; ++it) {
        const SegreShape s = random_small_shape(rng);
        const std::size_t k = 1 + rng.below(4);
        const auto pts = sample_points(s, kField, k, rng);
        const long r = rank(terracini_matrix(pts));
        const long cap = std::min<long>(
            static_cast<long>(k) * (s.dim() + 1),
            static_cast<long>(s.ambient_points_index()));
        CHECK(r <= cap);
    }
}

TEST_CASE("terracini rejects mixed shapes") {
    Rng rng(16);
    std::vector<AffinePoint> pts;
    pts.push_back(chart_origin(shape({1, 1, 1}), kField));
    pts.push_back(chart_origin(shape({1, 1, 2}), kField));
    CHECK_THROWS_AS(terracini_matrix(pts), std::invalid_argument);
}

TEST_CASE("second derivatives vanish on a single factor") {
    const SegreShape s = shape({5});
    const AffinePoint p = chart_origin(s, kField);
    std::vector<std::uint64_t> eq(s.ambient_points_index(), 3);
    const PrimeFieldMatrix j = mixed_second_contraction(p, eq);
    for (std::size_t a = 0; a < j.rows(); ++a)
        for (std::size_t b = 0; b < j.cols(); ++b) CHECK(j(a, b) == 0);
}

TEST_CASE("contraction of the top dual vector on P^1 x P^1") {
    const SegreShape s = shape({1, 1});
    const AffinePoint p = chart_origin(s, kField);
    std::vector<std::uint64_t> eq(4, 0);
    eq[3] = 1;  // dual of e_1 (x) e_1
    const PrimeFieldMatrix j = mixed_second_contraction(p, eq);
    CHECK(j(0, 0) == 0);
    CHECK(j(0, 1) == 1);
    CHECK(j(1, 0) == 1);
    CHECK(j(1, 1) == 0);
}

TEST_CASE("contraction is symmetric and matches bilinear interpolation") {
    // J[(f,i),(g,j)] is the eps*delta coefficient of
    // equation . embed(p + eps e_(f,i) + delta e_(g,j)).
    Rng rng(17);
    int checked = 0;
    while (checked < 100) {
        const SegreShape s = random_small_shape(rng);
        if (s.factor_count() < 2) continue;
        const AffinePoint p = random_point(s, kField, rng);
        std::vector<std::uint64_t> eq(s.ambient_points_index());
        for (auto& v : eq) v = rng.below(kField.p);
        const PrimeFieldMatrix j = mixed_second_contraction(p, eq);

        // symmetry everywhere
        for (std::size_t a = 0; a < j.rows(); ++a)
            for (std::size_t b = 0; b < j.cols(); ++b)
                CHECK(j(a, b) == j(b, a));

        const std::size_t f = rng.below(s.factor_count());
        std::size_t g = rng.below(s.factor_count());
        if (f == g) continue;
        const std::size_t i =
            rng.below(static_cast<std::uint64_t>(s.dims()[f]));
        const std::size_t jj =
            rng.below(static_cast<std::uint64_t>(s.dims()[g]));

        auto contract = [&](const AffinePoint& pt) {
            const auto v = embed(pt);
            unsigned __int128 acc = 0;
            for (std::size_t c = 0; c < v.size(); ++c)
                acc += static_cast<unsigned __int128>(v[c]) * eq[c] % kField.p;
            return static_cast<std::uint64_t>(acc % kField.p);
        };
        AffinePoint p10 = p, p01 = p, p11 = p;
        p10.coords[f][i] = kField.add(p10.coords[f][i], 1);
        p01.coords[g][jj] = kField.add(p01.coords[g][jj], 1);
        p11.coords[f][i] = kField.add(p11.coords[f][i], 1);
        p11.coords[g][jj] = kField.add(p11.coords[g][jj], 1);
        const std::uint64_t coeff = kField.sub(
            kField.add(contract(p11), contract(p)),
            kField.add(contract(p10), contract(p01)));

        std::size_t row = i, col = jj;
        for (std::size_t h = 0; h < f; ++h)
            row += static_cast<std::size_t>(s.dims()[h]);
        for (std::size_t h = 0; h < g; ++h)
            col += static_cast<std::size_t>(s.dims()[h]);
        REQUIRE(j(row, col) == coeff);
        ++checked;
    }
}

TEST_CASE("sampled batches pin the first point at the origin") {
    Rng rng(18);
    const SegreShape s = shape({1, 1, 1});
    const auto pts = sample_points(s, kField, 4, rng);
    REQUIRE(pts.size() == 4);
    for (const auto& block : pts[0].coords)
        for (auto v : block) CHECK(v == 0);
    CHECK(pts[0].coords.size() == 3);
    for (std::size_t f = 0; f < 3; ++f) CHECK(pts[0].coords[f].size() == 1);

    Rng rng_a(55), rng_b(55);
    const auto batch_a = sample_points(s, kField, 3, rng_a);
    const auto batch_b = sample_points(s, kField, 3, rng_b);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(batch_a[i].coords == batch_b[i].coords);
}
