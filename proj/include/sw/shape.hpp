#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sw/rational.hpp"

namespace sw {

/// A Segre product of projective spaces P^{a_1} x ... x P^{a_q}, stored in
/// canonical ascending order. Carries the combinatorial invariants every
/// other module keys on: n = sum a_i (dimension of the variety),
/// N + 1 = prod (a_i + 1) (points of the ambient projective space, i.e. the
/// tensor format size).
class SegreShape {
  public:
    /// Sorts the dims ascending and validates them (nonempty, all >= 1);
    /// the original order is kept as metadata. Throws std::invalid_argument
    /// on bad input.
    static SegreShape canonicalize(std::vector<long> dims);

    const std::vector<long>& dims() const { return dims_; }
    const std::vector<long>& input_dims() const { return input_dims_; }
    std::size_t factor_count() const { return dims_.size(); }

    /// n = sum a_i.
    long dim() const { return dim_; }
    /// N + 1 = prod (a_i + 1).
    const BigInt& ambient_points() const { return points_; }
    /// N.
    BigInt ambient_dim() const { return points_ - 1; }

    bool ambient_fits(std::size_t cap) const;
    std::size_t ambient_points_index() const;  // throws if too large

    std::string to_string() const;  // "(1,2,3)"

    bool operator==(const SegreShape& o) const { return dims_ == o.dims_; }
    bool operator<(const SegreShape& o) const { return dims_ < o.dims_; }

  private:
    std::vector<long> dims_;
    std::vector<long> input_dims_;
    long dim_ = 0;
    BigInt points_;
};

/// Critical rank k_c = prod(a_i + 1) / (1 + sum a_i); above it uniqueness of
/// the generic decomposition is impossible.
Rational critical_rank(const SegreShape& shape);

/// min(k (n+1), N+1) - 1, the dimension the k-secant variety has when it is
/// not defective.
BigInt expected_secant_dim(const SegreShape& shape, long k);

/// Degree of the Segre variety: (sum a_i)! / prod(a_i!).
BigInt segre_degree(const SegreShape& shape);

/// Degree of the product of all factors but the last (what the unbalanced
/// decomposition count is built from).
BigInt segre_degree_head(const SegreShape& shape);

/// Largest k with k < k_c, the top of the range where identifiability is
/// possible.
BigInt max_k_below_critical(const SegreShape& shape);

}  // namespace sw
