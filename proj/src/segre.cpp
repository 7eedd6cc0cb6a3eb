#include "sw/segre.hpp"

#include <stdexcept>

namespace sw {

namespace {

std::vector<std::uint64_t> full_vector(const AffinePoint& pt, std::size_t f) {
    const auto& block = pt.coords[f];
    std::vector<std::uint64_t> full(block.size() + 1);
    full[0] = 1;
    std::copy(block.begin(), block.end(), full.begin() + 1);
    return full;
}

std::vector<std::uint64_t> outer_accumulate(
    const std::vector<std::vector<std::uint64_t>>& blocks,
    const PrimeField& field) {
    std::vector<std::uint64_t> v{1};
    for (const auto& b : blocks) {
        std::vector<std::uint64_t> next(v.size() * b.size());
        std::size_t idx = 0;
        for (std::uint64_t lhs : v) {
            if (lhs == 0) {
                idx += b.size();
                continue;
            }
            const ShoupMul scale(lhs, field.p);
            for (std::uint64_t rhs : b) next[idx++] = scale(rhs);
        }
        v = std::move(next);
    }
    return v;
}

void check_point(const AffinePoint& pt) {
    if (pt.coords.size() != pt.shape.factor_count())
        throw std::invalid_argument("point: wrong number of factor blocks");
    for (std::size_t f = 0; f < pt.coords.size(); ++f)
        if (pt.coords[f].size() !=
            static_cast<std::size_t>(pt.shape.dims()[f]))
            throw std::invalid_argument("point: factor block length mismatch");
}

}  // namespace

AffinePoint chart_origin(const SegreShape& shape, PrimeField field) {
    AffinePoint pt{shape, field, {}};
    pt.coords.reserve(shape.factor_count());
    for (long a : shape.dims())
        pt.coords.emplace_back(static_cast<std::size_t>(a), 0);
    return pt;
}

AffinePoint random_point(const SegreShape& shape, PrimeField field, Rng& rng) {
    AffinePoint pt{shape, field, {}};
    pt.coords.reserve(shape.factor_count());
    for (long a : shape.dims()) {
        std::vector<std::uint64_t> block(static_cast<std::size_t>(a));
        for (auto& c : block) c = rng.below(field.p);
        pt.coords.push_back(std::move(block));
    }
    return pt;
}

std::vector<AffinePoint> sample_points(const SegreShape& shape,
                                       PrimeField field, std::size_t k,
                                       Rng& rng) {
    std::vector<AffinePoint> pts;
    pts.reserve(k);
    if (k > 0) pts.push_back(chart_origin(shape, field));
    while (pts.size() < k) pts.push_back(random_point(shape, field, rng));
    return pts;
}

std::vector<std::uint64_t> embed(const AffinePoint& point) {
    check_point(point);
    std::vector<std::vector<std::uint64_t>> fulls;
    fulls.reserve(point.coords.size());
    for (std::size_t f = 0; f < point.coords.size(); ++f)
        fulls.push_back(full_vector(point, f));
    return outer_accumulate(fulls, point.field);
}

namespace detail {

void tangent_frame_into(const AffinePoint& point, PrimeFieldMatrix& out,
                        std::size_t row0) {
    check_point(point);
    const PrimeField& field = point.field;
    const std::size_t q = point.coords.size();

    std::vector<std::vector<std::uint64_t>> fulls(q);
    for (std::size_t f = 0; f < q; ++f) fulls[f] = full_vector(point, f);

    // prefix[f]: outer product of blocks < f; suffix[f]: of blocks > f.
    std::vector<std::vector<std::uint64_t>> prefix(q), suffix(q);
    {
        std::vector<std::uint64_t> acc{1};
        for (std::size_t f = 0; f < q; ++f) {
            prefix[f] = acc;
            acc = outer_accumulate({acc, fulls[f]}, field);
        }
        std::copy(acc.begin(), acc.end(), out.row(row0).begin());  // embed
        acc = {1};
        for (std::size_t f = q; f-- > 0;) {
            suffix[f] = acc;
            acc = outer_accumulate({fulls[f], acc}, field);
        }
    }

    std::size_t row = row0 + 1;
    for (std::size_t f = 0; f < q; ++f) {
        const std::size_t len = fulls[f].size();
        const std::size_t bs = suffix[f].size();
        for (std::size_t dir = 1; dir < len; ++dir) {
            auto dst = out.row(row).begin();
            for (std::size_t a = 0; a < prefix[f].size(); ++a) {
                const std::uint64_t lhs = prefix[f][a];
                const std::size_t base = (a * len + dir) * bs;
                if (lhs == 0) continue;
                const ShoupMul scale(lhs, field.p);
                for (std::size_t b = 0; b < bs; ++b)
                    dst[base + b] = scale(suffix[f][b]);
            }
            ++row;
        }
    }
}

}  // namespace detail

PrimeFieldMatrix tangent_frame(const AffinePoint& point) {
    const std::size_t n = static_cast<std::size_t>(point.shape.dim());
    PrimeFieldMatrix out(n + 1, point.shape.ambient_points_index(),
                         point.field);
    detail::tangent_frame_into(point, out, 0);
    return out;
}

PrimeFieldMatrix terracini_matrix(std::span<const AffinePoint> points) {
    if (points.empty())
        throw std::invalid_argument("terracini_matrix: need points");
    const SegreShape& shape = points.front().shape;
    const PrimeField field = points.front().field;
    for (const AffinePoint& p : points)
        if (!(p.shape == shape) || !(p.field == field))
            throw std::invalid_argument(
                "terracini_matrix: mixed shapes or fields");
    const std::size_t n1 = static_cast<std::size_t>(shape.dim()) + 1;
    PrimeFieldMatrix out(points.size() * n1, shape.ambient_points_index(),
                         field);
    for (std::size_t i = 0; i < points.size(); ++i)
        detail::tangent_frame_into(points[i], out, i * n1);
    return out;
}

PrimeFieldMatrix mixed_second_contraction(
    const AffinePoint& point, std::span<const std::uint64_t> equation) {
    check_point(point);
    const PrimeField& field = point.field;
    const std::size_t q = point.coords.size();
    const std::size_t n = static_cast<std::size_t>(point.shape.dim());
    const std::size_t ambient = point.shape.ambient_points_index();
    if (equation.size() != ambient)
        throw std::invalid_argument("contraction: equation length mismatch");

    std::vector<std::vector<std::uint64_t>> fulls(q), invs(q);
    for (std::size_t f = 0; f < q; ++f) {
        fulls[f] = full_vector(point, f);
        invs[f].resize(fulls[f].size());
        for (std::size_t d = 0; d < fulls[f].size(); ++d)
            invs[f][d] = fulls[f][d] == 0 ? 0 : field.inv(fulls[f][d]);
    }

    std::vector<std::size_t> block_offset(q, 0);
    for (std::size_t f = 1; f < q; ++f)
        block_offset[f] =
            block_offset[f - 1] + static_cast<std::size_t>(point.shape.dims()[f - 1]);

    PrimeFieldMatrix J(n, n, field);
    std::vector<std::size_t> digits(q, 0);
    std::vector<std::size_t> zero_blocks;
    zero_blocks.reserve(q);

    auto cell = [&](std::size_t f, std::size_t g, std::uint64_t w) {
        // digits[f], digits[g] >= 1 guaranteed by the caller
        const std::size_t rf = block_offset[f] + digits[f] - 1;
        const std::size_t cg = block_offset[g] + digits[g] - 1;
        J(rf, cg) = field.add(J(rf, cg), w);
        J(cg, rf) = J(rf, cg);
    };

    for (std::size_t idx = 0; idx < ambient; ++idx) {
        const std::uint64_t e = equation[idx];
        if (e != 0) {
            zero_blocks.clear();
            std::uint64_t prod = e;
            for (std::size_t h = 0; h < q; ++h) {
                const std::uint64_t v = fulls[h][digits[h]];
                if (v == 0) {
                    zero_blocks.push_back(h);
                    if (zero_blocks.size() > 2) break;
                } else if (v != 1) {
                    prod = field.mul(prod, v);
                }
            }
            // An entry contributes to pair (f, g) iff all blocks outside
            // {f, g} evaluate to nonzero; blocks evaluating to zero always
            // sit at chart digits >= 1 because the leading coordinate is 1.
            if (zero_blocks.size() == 2) {
                const std::size_t f = zero_blocks[0], g = zero_blocks[1];
                cell(f, g, prod);
            } else if (zero_blocks.size() == 1) {
                const std::size_t f = zero_blocks[0];
                for (std::size_t g = 0; g < q; ++g) {
                    if (g == f || digits[g] == 0) continue;
                    cell(std::min(f, g), std::max(f, g),
                         field.mul(prod, invs[g][digits[g]]));
                }
            } else if (zero_blocks.empty()) {
                for (std::size_t f = 0; f < q; ++f) {
                    if (digits[f] == 0) continue;
                    const std::uint64_t wf =
                        field.mul(prod, invs[f][digits[f]]);
                    for (std::size_t g = f + 1; g < q; ++g) {
                        if (digits[g] == 0) continue;
                        cell(f, g, field.mul(wf, invs[g][digits[g]]));
                    }
                }
            }
        }
        // mixed-radix odometer, last factor fastest
        for (std::size_t h = q; h-- > 0;) {
            if (++digits[h] < fulls[h].size()) break;
            digits[h] = 0;
        }
    }
    return J;
}

}  // namespace sw
