#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sw/matrix.hpp"
#include "sw/prime_field.hpp"
#include "sw/rng.hpp"
#include "sw/shape.hpp"

namespace sw {

/// A point of the Segre variety in the standard affine chart: per factor f
/// the chart coordinates of length a_f; the full factor vector is
/// (1, coords_f). The chart origin ((1,0,...) on every factor) is the
/// distinguished first point of every sample batch.
struct AffinePoint {
    SegreShape shape;
    PrimeField field;
    std::vector<std::vector<std::uint64_t>> coords;
};

AffinePoint chart_origin(const SegreShape& shape, PrimeField field);
AffinePoint random_point(const SegreShape& shape, PrimeField field, Rng& rng);

/// k points with the first pinned at the chart origin.
std::vector<AffinePoint> sample_points(const SegreShape& shape,
                                       PrimeField field, std::size_t k,
                                       Rng& rng);

/// The Segre embedding of a chart point: the outer product of the per-factor
/// vectors (1, coords_f), flattened in mixed-radix index order with the
/// first factor as the most significant digit and the last factor fastest.
/// All equation vectors use this order.
std::vector<std::uint64_t> embed(const AffinePoint& point);

/// (n+1) x (N+1): row 0 is embed(point), followed by the n chart-direction
/// derivative rows (factor blocks in order, chart index ascending). Together
/// the rows span the affine cone over the embedded tangent space.
PrimeFieldMatrix tangent_frame(const AffinePoint& point);

/// Vertical stack of the tangent frames of k points: k(n+1) x (N+1). Its
/// rank computes the dimension of the secant variety's tangent cone.
/// Throws std::invalid_argument on mixed shapes or fields.
PrimeFieldMatrix terracini_matrix(std::span<const AffinePoint> points);

/// The n x n symmetric matrix of second derivatives of (equation ∘ embed)
/// at the point. Blocks are indexed by (factor, chart direction) pairs in
/// tangent-frame row order; the diagonal factor blocks vanish because the
/// embedding is multilinear.
PrimeFieldMatrix mixed_second_contraction(
    const AffinePoint& point, std::span<const std::uint64_t> equation);

namespace detail {
/// Writes the tangent frame of `point` into rows [row0, row0+n] of `out`.
void tangent_frame_into(const AffinePoint& point, PrimeFieldMatrix& out,
                        std::size_t row0);
}  // namespace detail

}  // namespace sw
