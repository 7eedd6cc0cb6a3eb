#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sw/rational.hpp"
#include "sw/shape.hpp"

namespace sw {

/// A closed-form rule was asked to fire outside its hypotheses; the message
/// names the violated inequality.
struct RuleInapplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedShape : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Status { Identifiable, NotIdentifiable, Unknown };

std::string to_string(Status s);

/// Summary of one successful tangency run, carried as the leaf of numeric
/// certificates and inside Identifiable verdicts.
struct NumericWitness {
    std::vector<long> dims;
    long k = 0;
    long r = 0;
    std::uint64_t prime = 0;
    std::uint64_t seed = 0;
    long terracini_rank = 0;
    long jacobian_rank = 0;
};

struct Verdict {
    Status status = Status::Unknown;
    std::string rule;    // e.g. "unbalanced-corollary", "exceptions-table"
    std::string detail;  // the inequality or datum that decided it
    std::optional<std::string> witness;  // decomposition count / fiber dim
    std::optional<NumericWitness> numeric;
    /// Set on shapes where the unbalanced boundary count evaluates to 1,
    /// which contradicts classical small-format identifiability; the rule is
    /// applied as stated and the tension is surfaced instead of resolved.
    bool caveat = false;
    std::string caveat_text;
};

enum class Regime { Balanced, Boundary, Unbalanced };

std::string to_string(Regime r);

/// The three-way split driven by the size of the last factor relative to
/// P = prod of the other (a_i + 1) and S = sum of the other a_i:
/// Balanced a_q <= P-S-1, Boundary a_q = P-S, Unbalanced a_q >= P-S+1.
struct UnbalancedProfile {
    SegreShape shape;
    long tail = 0;          // a_q
    BigInt head_product;    // P
    long head_sum = 0;      // S
    Regime regime = Regime::Balanced;
    std::optional<BigInt> generic_rank;
    /// Number of decompositions of the general tensor at the boundary rank
    /// k = P - S, namely C(D, P - S) with D the degree of the head product.
    std::optional<BigInt> boundary_decompositions;
};

/// Requires q >= 3 (throws UnsupportedShape otherwise).
UnbalancedProfile unbalanced_profile(const SegreShape& shape);

/// One row of the known non-identifiable cases. Parametrized families
/// ((2,b,b) with b even, (1,1,n,n)) are matched by predicate.
struct TableRow {
    std::string family;   // e.g. "(2,b,b) b even"
    long k = 0;
    std::string witness;  // decomposition datum, stored verbatim
};

std::optional<TableRow> exceptions_table_match(const SegreShape& shape,
                                               long k);

/// Closed-form classification cascade; returns Unknown when no rule
/// applies, in which case the caller may escalate to the numeric check.
Verdict classify(const SegreShape& shape, long k);

/// An identifiability certificate: "a general linear subspace of dimension
/// r tangent at k general points of the shape's Segre variety is tangent
/// nowhere else", together with the derivation that produced it. Every
/// construction validates its rule's preconditions.
class Certificate {
  public:
    struct Step {
        std::string rule;  // numeric-base | strassen-base | weaken | extend
        long m = 0;        // extend only
        BigInt r;
        BigInt k;
        std::vector<long> dims;  // shape after this step
        std::optional<NumericWitness> base;  // numeric-base only
    };

    static Certificate numeric_base(const SegreShape& shape, const BigInt& r,
                                    const BigInt& k,
                                    std::optional<NumericWitness> witness);

    const SegreShape& shape() const { return shape_; }
    const BigInt& r() const { return r_; }
    const BigInt& k() const { return k_; }
    const std::vector<Step>& derivation() const { return steps_; }

  private:
    friend Certificate strassen_base(const SegreShape&);
    friend Certificate extend_certificate(const Certificate&, long);
    friend Certificate weaken_certificate(const Certificate&, const BigInt&,
                                          const BigInt&);
    SegreShape shape_;
    BigInt r_;
    BigInt k_;
    std::vector<Step> steps_;
};

/// Base certificate for a triple product P^a x P^b x P^c with 2 < a <= b <= c:
/// r = N - (a+b+2) and k = floor(k_c) - c - 1. Throws RuleInapplicable when
/// a <= 2 or q != 3, and "bound vacuous" when the k comes out below 1.
Certificate strassen_base(const SegreShape& shape);

/// Appends a P^m factor: requires (n+1)k < N+1, r < N and r+1 >= (n+m+1)k on
/// the current shape; produces (m(r+1)+r, (m+1)k) on shape x P^m.
Certificate extend_certificate(const Certificate& cert, long m);

/// Shrinks to r' <= r, k' <= k with r' >= k'(n+1) - 1.
Certificate weaken_certificate(const Certificate& cert, const BigInt& r,
                               const BigInt& k);

struct BoundEntry {
    std::string rule;
    BigInt k;      // 0 when vacuous
    std::string detail;
};

struct BoundsReport {
    Rational kc;
    std::vector<BoundEntry> closed_form;
    std::optional<Certificate> engine;
    BigInt engine_k;  // 0 when the engine found nothing
    BigInt best_k;
    std::string best_rule;
};

/// Evaluates every applicable closed-form bound plus a bounded search over
/// the certificate engine (strassen bases on 3-factor sub-products and any
/// caller-supplied numeric bases, extended factor by factor with one weaken
/// per step). All arithmetic exact.
BoundsReport best_bound(const SegreShape& shape,
                        std::span<const Certificate> numeric_bases = {});

}  // namespace sw
