#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sw/certify.hpp"
#include "sw/shape.hpp"

namespace sw {

/// The span of the tangent frames fills the whole ambient space, so there
/// are no cartesian equations to differentiate and the check cannot run.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericConfig {
    int prime_bits = 31;
    std::uint64_t seed = 0;
    int trials = 3;
};

/// One tangency question: is a general r-dimensional subspace tangent at k
/// general points of the shape's Segre variety tangent nowhere else?
/// Without r the span of the k tangent frames itself is used
/// (r = k(n+1) - 1); with r > k(n+1) - 1 the span is padded with random
/// ambient rows.
struct TangencyQuery {
    SegreShape shape;
    long k = 1;
    std::optional<long> r;
    int trials = 3;
    int prime_bits = 31;
    std::uint64_t seed = 0;

    long effective_r() const {
        return r ? *r : k * (shape.dim() + 1) - 1;
    }
};

struct TangencyReport {
    std::vector<long> dims;
    long k = 0;
    long r = 0;
    std::uint64_t prime = 0;
    std::uint64_t seed = 0;  // master seed of the query
    long terracini_rank = 0;
    long span_dim = 0;
    long num_equations = 0;
    long jacobian_rank = 0;
    bool certified = false;
    int trials_run = 0;
    double elapsed_ms = 0.0;

    std::string verdict() const {
        return certified ? "Certified" : "Inconclusive";
    }
    NumericWitness witness() const;
};

/// Runs the randomized tangency check: sample k points (first at the chart
/// origin) over a fresh word-size prime, stack the tangent frames, pad up to
/// dimension r with random rows if requested, compute the span's cartesian
/// equations as a kernel basis, contract each equation's mixed second
/// derivatives at the first point, and test whether the stacked jacobian has
/// full rank n. Certified requires independent tangent frames as well.
///
/// A Certified answer is a genuine characteristic-zero certificate: both the
/// reduction mod p and the random choice of points can only lower ranks, so
/// achieving the target rank at a special point proves it for the general
/// one. Inconclusive is only evidence and triggers a retry with fresh prime
/// and points, up to `trials` times.
///
/// Throws PreconditionError when the computed span fills the ambient space.
TangencyReport tangency_check(const TangencyQuery& query);

struct SecantDimension {
    std::vector<long> dims;
    long k = 0;
    long expected = 0;
    long actual = 0;
    long defect = 0;
    std::uint64_t prime = 0;
    std::uint64_t seed = 0;
};

/// Projective dimension of the k-secant variety via the Terracini matrix at
/// k random points, against the expected value min(k(n+1), N+1) - 1. The
/// maximum rank over `trials` independent draws is reported (specialization
/// can only lose rank).
SecantDimension secant_dimension(const SegreShape& shape, long k,
                                 const NumericConfig& config);

/// Wraps tangency_check with the tangent span itself: Certified maps to
/// Identifiable with a numeric witness, anything else to Unknown. The method
/// is one-sided and never returns NotIdentifiable.
Verdict identifiability_numeric(const SegreShape& shape, long k,
                                const NumericConfig& config);

}  // namespace sw
