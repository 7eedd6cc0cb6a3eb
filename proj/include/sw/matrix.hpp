#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sw/prime_field.hpp"
#include "sw/rng.hpp"

namespace sw {

/// Dense row-major matrix over a prime field. Plain value type; the
/// (P^1)^12 Terracini matrix (4095 x 4096, 128 MiB at 8 bytes/entry) is the
/// sizing target, so elimination happens in place and nothing here copies
/// behind the caller's back.
class PrimeFieldMatrix {
  public:
    PrimeFieldMatrix() = default;
    PrimeFieldMatrix(std::size_t rows, std::size_t cols, PrimeField field)
        : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

    static PrimeFieldMatrix random(std::size_t rows, std::size_t cols,
                                   PrimeField field, Rng& rng);
    static PrimeFieldMatrix identity(std::size_t n, PrimeField field);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const PrimeField& field() const { return field_; }

    std::uint64_t operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }
    std::uint64_t& operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    std::span<const std::uint64_t> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<std::uint64_t> row(std::size_t i) {
        return {data_.data() + i * cols_, cols_};
    }

    void swap_rows(std::size_t a, std::size_t b);

    bool operator==(const PrimeFieldMatrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    PrimeField field_{};
    std::vector<std::uint64_t> data_;
};

/// Row echelon form of a matrix, computed once by fraction-free in-place
/// elimination with deterministic (first nonzero) pivoting. Exposes the
/// rank and lazy access to right-kernel basis vectors so callers can stop
/// early.
class RowEchelon {
  public:
    static RowEchelon reduce(PrimeFieldMatrix m);

    long rank() const { return static_cast<long>(pivot_cols_.size()); }
    std::size_t cols() const { return m_.cols(); }
    std::size_t kernel_dimension() const {
        return m_.cols() - pivot_cols_.size();
    }
    const std::vector<std::size_t>& free_columns() const {
        return free_cols_;
    }

    /// Basis vector of {x : Mx = 0} associated with the i-th free column.
    std::vector<std::uint64_t> kernel_vector(std::size_t i) const;

    /// All kernel basis vectors stacked as rows.
    PrimeFieldMatrix kernel() const;

  private:
    PrimeFieldMatrix m_;
    std::vector<std::size_t> pivot_cols_;
    std::vector<std::size_t> free_cols_;
};

long rank(PrimeFieldMatrix m);

/// Basis of {x : Mx = 0}, one vector per row; (cols - rank) rows.
PrimeFieldMatrix nullspace(const PrimeFieldMatrix& m);

PrimeFieldMatrix transpose(const PrimeFieldMatrix& m);
PrimeFieldMatrix multiply(const PrimeFieldMatrix& a,
                          const PrimeFieldMatrix& b);

/// Streaming rank accumulator over a fixed column count; rows are reduced
/// against the pivots collected so far. Rank is exact at any point for the
/// rows fed so far and is capped at `cols`, which lets the tangency check
/// stop as soon as the jacobian stack reaches full rank.
class IncrementalRank {
  public:
    IncrementalRank(std::size_t cols, PrimeField field)
        : cols_(cols), field_(field) {}

    void feed(std::span<const std::uint64_t> row);
    long rank() const { return static_cast<long>(pivots_.size()); }
    bool saturated() const { return pivots_.size() == cols_; }

  private:
    struct PivotRow {
        std::size_t col;
        std::vector<std::uint64_t> values;
    };
    std::size_t cols_;
    PrimeField field_;
    std::vector<PivotRow> pivots_;  // sorted by col
};

}  // namespace sw
