#include "sw/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

namespace sw {

PrimeFieldMatrix PrimeFieldMatrix::random(std::size_t rows, std::size_t cols,
                                          PrimeField field, Rng& rng) {
    PrimeFieldMatrix m(rows, cols, field);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.below(field.p);
    return m;
}

PrimeFieldMatrix PrimeFieldMatrix::identity(std::size_t n, PrimeField field) {
    PrimeFieldMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

void PrimeFieldMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * cols_,
                     data_.begin() + (a + 1) * cols_,
                     data_.begin() + b * cols_);
}

RowEchelon RowEchelon::reduce(PrimeFieldMatrix m) {
    RowEchelon e;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    const PrimeField field = m.field();
    const std::uint64_t p = field.p;
    std::size_t rank = 0;

    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rows;
        for (std::size_t i = rank; i < rows; ++i) {
            if (m(i, col) != 0) {
                piv = i;
                break;
            }
        }
        if (piv == rows) continue;
        m.swap_rows(rank, piv);

        const std::uint64_t pinv = field.inv(m(rank, col));
        const std::uint64_t* prow = m.row(rank).data();
        for (std::size_t i = rank + 1; i < rows; ++i) {
            std::uint64_t* r = m.row(i).data();
            const std::uint64_t lead = r[col];
            if (lead == 0) continue;
            const ShoupMul scale(field.mul(lead, pinv), p);
            r[col] = 0;
            for (std::size_t j = col + 1; j < cols; ++j) {
                const std::uint64_t t = scale(prow[j]);
                r[j] = r[j] >= t ? r[j] - t : r[j] + p - t;
            }
        }
        e.pivot_cols_.push_back(col);
        ++rank;
    }

    e.free_cols_.reserve(cols - e.pivot_cols_.size());
    std::size_t next = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        if (next < e.pivot_cols_.size() && e.pivot_cols_[next] == c)
            ++next;
        else
            e.free_cols_.push_back(c);
    }
    e.m_ = std::move(m);
    return e;
}

std::vector<std::uint64_t> RowEchelon::kernel_vector(std::size_t i) const {
    assert(i < free_cols_.size());
    const PrimeField& field = m_.field();
    const std::size_t cols = m_.cols();
    std::vector<std::uint64_t> x(cols, 0);
    x[free_cols_[i]] = 1;
    for (std::size_t t = pivot_cols_.size(); t-- > 0;) {
        const std::size_t pc = pivot_cols_[t];
        const std::uint64_t* row = m_.row(t).data();
        unsigned __int128 acc = 0;
        for (std::size_t c = pc + 1; c < cols; ++c) {
            if (x[c] != 0 && row[c] != 0) {
                acc += static_cast<unsigned __int128>(row[c]) * x[c];
                // Partial sums of products of residues < 2^63 cannot
                // overflow a 128-bit accumulator for any matrix this
                // artifact builds; reduce once per row.
                if ((acc >> 126) != 0) acc %= field.p;
            }
        }
        const std::uint64_t s =
            static_cast<std::uint64_t>(acc % field.p);
        x[pc] = field.mul(field.neg(s), field.inv(row[pc]));
    }
    return x;
}

PrimeFieldMatrix RowEchelon::kernel() const {
    PrimeFieldMatrix out(free_cols_.size(), m_.cols(), m_.field());
    for (std::size_t i = 0; i < free_cols_.size(); ++i) {
        const auto v = kernel_vector(i);
        std::copy(v.begin(), v.end(), out.row(i).begin());
    }
    return out;
}

long rank(PrimeFieldMatrix m) { return RowEchelon::reduce(std::move(m)).rank(); }

PrimeFieldMatrix nullspace(const PrimeFieldMatrix& m) {
    return RowEchelon::reduce(m).kernel();
}

PrimeFieldMatrix transpose(const PrimeFieldMatrix& m) {
    PrimeFieldMatrix out(m.cols(), m.rows(), m.field());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
    return out;
}

PrimeFieldMatrix multiply(const PrimeFieldMatrix& a,
                          const PrimeFieldMatrix& b) {
    if (a.cols() != b.rows() || !(a.field() == b.field()))
        throw std::invalid_argument("multiply: incompatible matrices");
    const PrimeField& f = a.field();
    PrimeFieldMatrix out(a.rows(), b.cols(), f);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::uint64_t v = a(i, k);
            if (v == 0) continue;
            const ShoupMul scale(v, f.p);
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) = f.add(out(i, j), scale(b(k, j)));
        }
    }
    return out;
}

void IncrementalRank::feed(std::span<const std::uint64_t> row) {
    if (saturated()) return;
    assert(row.size() == cols_);
    std::vector<std::uint64_t> work(row.begin(), row.end());
    const std::uint64_t p = field_.p;
    for (const PivotRow& pr : pivots_) {
        const std::uint64_t lead = work[pr.col];
        if (lead == 0) continue;
        const ShoupMul scale(lead, p);
        for (std::size_t j = pr.col; j < cols_; ++j) {
            const std::uint64_t t = scale(pr.values[j]);
            work[j] = work[j] >= t ? work[j] - t : work[j] + p - t;
        }
    }
    std::size_t lead_col = cols_;
    for (std::size_t j = 0; j < cols_; ++j) {
        if (work[j] != 0) {
            lead_col = j;
            break;
        }
    }
    if (lead_col == cols_) return;
    // Normalize so later reductions need no inverse.
    const std::uint64_t inv = field_.inv(work[lead_col]);
    for (std::size_t j = lead_col; j < cols_; ++j)
        work[j] = field_.mul(work[j], inv);
    PivotRow pr{lead_col, std::move(work)};
    auto it = std::lower_bound(
        pivots_.begin(), pivots_.end(), pr,
        [](const PivotRow& a, const PivotRow& b) { return a.col < b.col; });
    pivots_.insert(it, std::move(pr));
}

}  // namespace sw
