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

#include "randfunm/sparse_matrix.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace randfunm;
using randfunm::testing::cycle;
using randfunm::testing::star3;

TEST(SparseMatrix, SumsDuplicatesAndDropsZeros)
{
    auto m = SparseMatrix::from_triplets(3, {{0, 1, 1.0}, {0, 1, 2.0}, {2, 0, 1.0}, {2, 0, -1.0}, {1, 1, 4.0}});
    EXPECT_EQ(m.nnz(), 2);
    EXPECT_EQ(m.at(0, 1), 3.0);
    EXPECT_EQ(m.at(1, 1), 4.0);
    EXPECT_EQ(m.at(2, 0), 0.0);
}

TEST(SparseMatrix, RejectsBadEntries)
{
    EXPECT_THROW(SparseMatrix::from_triplets(2, {{0, 2, 1.0}}), ArgumentError);
    EXPECT_THROW(SparseMatrix::from_triplets(2, {{-1, 0, 1.0}}), ArgumentError);
    EXPECT_THROW(SparseMatrix::from_triplets(2, {{0, 1, std::nan("")}}), ArgumentError);
    EXPECT_THROW(SparseMatrix::from_triplets(2, {{0, 1, 1.0}}, true), ArgumentError);
}

TEST(SparseMatrix, RowAndColumnViewsAgree)
{
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        const index_t n = 1 + static_cast<index_t>(gen() % 20);
        std::vector<Triplet> t;
        const auto count = gen() % 60;
        for (std::uint64_t e = 0; e < count; ++e)
            t.push_back({static_cast<index_t>(gen() % n), static_cast<index_t>(gen() % n),
                         static_cast<double>(static_cast<int>(gen() % 7) - 3)});
        const auto m = SparseMatrix::from_triplets(n, t);

        std::vector<double> dense(static_cast<std::size_t>(n * n), 0.0);
        for (const auto& x : t) dense[x.row * n + x.col] += x.value;
        for (index_t i = 0; i < n; ++i)
            for (index_t j = 0; j < n; ++j) ASSERT_EQ(m.at(i, j), dense[i * n + j]);

        auto by_row = m.triplets();
        auto by_col = m.column_triplets();
        std::sort(by_col.begin(), by_col.end(),
                  [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
        ASSERT_EQ(by_row, by_col);

        std::vector<double> x(static_cast<std::size_t>(n));
        for (auto& v : x) v = static_cast<double>(gen() % 5);
        const auto y = m.multiply(x);
        for (index_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (index_t j = 0; j < n; ++j) s += dense[i * n + j] * x[j];
            ASSERT_EQ(y[i], s);
        }
    }
}

TEST(SparseMatrix, Symmetry)
{
    EXPECT_TRUE(cycle(5).is_symmetric());
    EXPECT_FALSE(SparseMatrix::from_triplets(2, {{0, 1, 1.0}}).is_symmetric());
    EXPECT_FALSE(SparseMatrix::from_triplets(2, {{0, 1, 1.0}, {1, 0, 2.0}}).is_symmetric());
}

TEST(Symmetrize, SingleArc)
{
    const auto a = SparseMatrix::from_triplets(2, {{0, 1, 1.0}});
    const auto b = symmetrize_digraph(a);
    EXPECT_EQ(b.size(), 4);
    EXPECT_EQ(b.nnz(), 2);
    EXPECT_EQ(b.at(0, 3), 1.0);
    EXPECT_EQ(b.at(3, 0), 1.0);
    EXPECT_TRUE(b.symmetric_hint());
}

TEST(Symmetrize, ZeroMatrix)
{
    const auto b = symmetrize_digraph(SparseMatrix::from_triplets(2, {}));
    EXPECT_EQ(b.size(), 4);
    EXPECT_EQ(b.nnz(), 0);
}

TEST(Symmetrize, TwoCycleBlocks)
{
    // Row u of the out-block meets row n + v of the in-block for every arc u -> v.
    const auto b = symmetrize_digraph(SparseMatrix::from_triplets(2, {{0, 1, 1.0}, {1, 0, 1.0}}));
    EXPECT_EQ(b.nnz(), 4);
    EXPECT_TRUE(b.is_symmetric());
    EXPECT_EQ(b.at(0, 3), 1.0);
    EXPECT_EQ(b.at(3, 0), 1.0);
    EXPECT_EQ(b.at(1, 2), 1.0);
    EXPECT_EQ(b.at(2, 1), 1.0);
    EXPECT_EQ(b.at(0, 1), 0.0);
    EXPECT_EQ(b.at(0, 2), 0.0);
}

TEST(Symmetrize, CompleteDigraphGivesFourCycle)
{
    const auto b = symmetrize_digraph(SparseMatrix::from_triplets(2, {{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}}));
    EXPECT_EQ(b.nnz(), 8);
    for (index_t i = 0; i < 4; ++i) EXPECT_EQ(b.row_cols(i).size(), 2u);
    for (index_t i = 0; i < 4; ++i) EXPECT_EQ(b.at(i, i), 0.0);
}

TEST(Scale, Values)
{
    const auto m = scale(SparseMatrix::from_triplets(2, {{0, 1, 1.0}, {1, 0, 1.0}}), 0.5);
    EXPECT_EQ(m.row_major_values(), (std::vector<double>{0.5, 0.5}));
    EXPECT_EQ(scale(cycle(4), 1.0), cycle(4));
    const auto star = scale(star3(), 1e-3);
    for (double v : star.row_major_values()) EXPECT_EQ(v, 1e-3);
    EXPECT_THROW(scale(cycle(4), 0.0), ArgumentError);
    EXPECT_THROW(scale(cycle(4), -1.0), ArgumentError);
}

TEST(RowSums, Examples)
{
    const auto m = SparseMatrix::from_triplets(3, {{0, 1, 2.0}, {0, 2, -1.0}, {2, 0, 5.0}});
    EXPECT_EQ(row_abs_sums(m), (std::vector<double>{3.0, 0.0, 5.0}));
    EXPECT_EQ(row_abs_sums(SparseMatrix::from_triplets(3, {})), (std::vector<double>{0.0, 0.0, 0.0}));
    EXPECT_EQ(row_abs_sums(cycle(4)), (std::vector<double>{2.0, 2.0, 2.0, 2.0}));
    EXPECT_EQ(max_abs_row_sum(m), 5.0);
}
