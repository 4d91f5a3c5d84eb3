/*
   Copyright 2026 The randfunm Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "randfunm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace randfunm {

struct Triplet {
    index_t row;
    index_t col;
    double value;

    friend bool operator==(const Triplet&, const Triplet&) = default;
};

//---------------------------------------------------------------------------//
/*!
 * \brief Square sparse matrix stored twice: compressed rows for walking and
 * compressed columns for extracting C_j.
 *
 * Both indexes hold the same set of (i, j, a_ij) triples, sorted by the minor
 * index, without explicit zeros or duplicate pairs. The matrix is immutable
 * once built and can be shared read-only between threads.
 */
class SparseMatrix {
public:
    SparseMatrix() : row_ptr_(1, 0), col_ptr_(1, 0) {}

    /// Duplicate (i, j) pairs are summed; entries that end up zero are dropped.
    static SparseMatrix from_triplets(index_t n, std::vector<Triplet> entries,
                                      bool symmetric_hint = false)
    {
        if (n < 0) throw ArgumentError("matrix dimension must be non-negative");
        for (const auto& t : entries) {
            if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
                throw ArgumentError("entry (" + std::to_string(t.row) + ", " +
                                    std::to_string(t.col) + ") outside a " +
                                    std::to_string(n) + "x" + std::to_string(n) + " matrix");
            if (!std::isfinite(t.value)) throw ArgumentError("non-finite matrix entry");
        }
        std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });

        SparseMatrix m;
        m.n_ = n;
        m.symmetric_hint_ = symmetric_hint;
        m.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (std::size_t p = 0; p < entries.size();) {
            const auto row = entries[p].row;
            const auto col = entries[p].col;
            double sum = 0.0;
            for (; p < entries.size() && entries[p].row == row && entries[p].col == col; ++p)
                sum += entries[p].value;
            if (sum == 0.0) continue;
            m.cols_.push_back(col);
            m.row_vals_.push_back(sum);
            ++m.row_ptr_[row + 1];
        }
        for (index_t i = 0; i < n; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
        m.build_column_index();

        if (symmetric_hint && !m.is_symmetric())
            throw ArgumentError("symmetric_hint set on a non-symmetric matrix");
        return m;
    }

    index_t size() const noexcept { return n_; }
    index_t nnz() const noexcept { return static_cast<index_t>(cols_.size()); }
    bool symmetric_hint() const noexcept { return symmetric_hint_; }

    // Row-major view: row i occupies positions [row_begin(i), row_end(i)).
    index_t row_begin(index_t i) const { return row_ptr_[i]; }
    index_t row_end(index_t i) const { return row_ptr_[i + 1]; }
    std::span<const index_t> row_cols(index_t i) const
    {
        return {cols_.data() + row_ptr_[i], static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
    }
    std::span<const double> row_values(index_t i) const
    {
        return {row_vals_.data() + row_ptr_[i], static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
    }

    // Column-major view: column j occupies positions [col_begin(j), col_end(j)).
    index_t col_begin(index_t j) const { return col_ptr_[j]; }
    index_t col_end(index_t j) const { return col_ptr_[j + 1]; }
    std::span<const index_t> col_rows(index_t j) const
    {
        return {rows_.data() + col_ptr_[j], static_cast<std::size_t>(col_ptr_[j + 1] - col_ptr_[j])};
    }
    std::span<const double> col_values(index_t j) const
    {
        return {col_vals_.data() + col_ptr_[j], static_cast<std::size_t>(col_ptr_[j + 1] - col_ptr_[j])};
    }

    const std::vector<index_t>& row_ptr() const noexcept { return row_ptr_; }
    const std::vector<index_t>& col_indices() const noexcept { return cols_; }
    const std::vector<double>& row_major_values() const noexcept { return row_vals_; }
    const std::vector<index_t>& col_ptr() const noexcept { return col_ptr_; }
    const std::vector<index_t>& row_indices() const noexcept { return rows_; }
    const std::vector<double>& col_major_values() const noexcept { return col_vals_; }

    /// a_ij, zero when not stored.
    double at(index_t i, index_t j) const
    {
        const auto cols = row_cols(i);
        const auto it = std::lower_bound(cols.begin(), cols.end(), j);
        if (it == cols.end() || *it != j) return 0.0;
        return row_vals_[row_ptr_[i] + (it - cols.begin())];
    }

    bool is_symmetric() const
    {
        for (index_t i = 0; i < n_; ++i) {
            const auto cols = row_cols(i);
            const auto vals = row_values(i);
            const auto rows = col_rows(i);
            const auto cvals = col_values(i);
            if (!std::equal(cols.begin(), cols.end(), rows.begin(), rows.end())) return false;
            if (!std::equal(vals.begin(), vals.end(), cvals.begin(), cvals.end())) return false;
        }
        return true;
    }

    /// Triples in row-major order.
    std::vector<Triplet> triplets() const
    {
        std::vector<Triplet> out;
        out.reserve(cols_.size());
        for (index_t i = 0; i < n_; ++i)
            for (index_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
                out.push_back({i, cols_[p], row_vals_[p]});
        return out;
    }

    /// Triples read from the column-major index, in column-major order.
    std::vector<Triplet> column_triplets() const
    {
        std::vector<Triplet> out;
        out.reserve(rows_.size());
        for (index_t j = 0; j < n_; ++j)
            for (index_t p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p)
                out.push_back({rows_[p], j, col_vals_[p]});
        return out;
    }

    /// y = A x
    std::vector<double> multiply(std::span<const double> x) const
    {
        if (static_cast<index_t>(x.size()) != n_) throw ArgumentError("vector length does not match matrix");
        std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
        for (index_t i = 0; i < n_; ++i) {
            double sum = 0.0;
            for (index_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) sum += row_vals_[p] * x[cols_[p]];
            y[i] = sum;
        }
        return y;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b)
    {
        return a.n_ == b.n_ && a.row_ptr_ == b.row_ptr_ && a.cols_ == b.cols_ &&
               a.row_vals_ == b.row_vals_;
    }

private:
    void build_column_index()
    {
        const auto nnz = cols_.size();
        col_ptr_.assign(static_cast<std::size_t>(n_) + 1, 0);
        rows_.resize(nnz);
        col_vals_.resize(nnz);
        for (auto c : cols_) ++col_ptr_[c + 1];
        for (index_t j = 0; j < n_; ++j) col_ptr_[j + 1] += col_ptr_[j];
        std::vector<index_t> next(col_ptr_.begin(), col_ptr_.end() - 1);
        for (index_t i = 0; i < n_; ++i) {
            for (index_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
                const auto dst = next[cols_[p]]++;
                rows_[dst] = i;
                col_vals_[dst] = row_vals_[p];
            }
        }
    }

    index_t n_ = 0;
    bool symmetric_hint_ = false;

    std::vector<index_t> row_ptr_;
    std::vector<index_t> cols_;
    std::vector<double> row_vals_;

    std::vector<index_t> col_ptr_;
    std::vector<index_t> rows_;
    std::vector<double> col_vals_;
};

/// Multiplies every stored value by gamma; the sparsity pattern is unchanged.
inline SparseMatrix scale(const SparseMatrix& a, double gamma)
{
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ArgumentError("scaling factor gamma must be positive and finite");
    auto entries = a.triplets();
    for (auto& t : entries) t.value *= gamma;
    return SparseMatrix::from_triplets(a.size(), std::move(entries), a.symmetric_hint());
}

/// Block matrix [[0, A], [A^T, 0]] of size 2n. Rows 0..n-1 carry the outgoing
/// edges, rows n..2n-1 the incoming ones.
inline SparseMatrix symmetrize_digraph(const SparseMatrix& a)
{
    const auto n = a.size();
    std::vector<Triplet> entries;
    entries.reserve(2 * static_cast<std::size_t>(a.nnz()));
    for (const auto& t : a.triplets()) {
        entries.push_back({t.row, n + t.col, t.value});
        entries.push_back({n + t.col, t.row, t.value});
    }
    return SparseMatrix::from_triplets(2 * n, std::move(entries), true);
}

inline std::vector<double> row_abs_sums(const SparseMatrix& a)
{
    std::vector<double> sums(static_cast<std::size_t>(a.size()), 0.0);
    for (index_t i = 0; i < a.size(); ++i)
        for (double v : a.row_values(i)) sums[i] += std::abs(v);
    return sums;
}

inline double max_abs_row_sum(const SparseMatrix& a)
{
    const auto sums = row_abs_sums(a);
    return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

} // namespace randfunm
