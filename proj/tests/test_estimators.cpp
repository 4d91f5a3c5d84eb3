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

#include "randfunm/estimators.hpp"
#include "randfunm/graph_gen.hpp"
#include "randfunm/oracle.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace randfunm;
using randfunm::testing::cycle;
using randfunm::testing::path;
using randfunm::testing::path2;
using randfunm::testing::star3;

namespace {

EstimatorOptions opts(std::uint64_t samples, double cutoff = 1e-10, std::uint64_t seed = 42)
{
    EstimatorOptions o;
    o.walk.samples = samples;
    o.walk.cutoff = cutoff;
    o.walk.seed = seed;
    return o;
}

const std::vector<double> kOnes2{1.0, 1.0};

} // namespace

TEST(RandFunm, InvolutoryClosedForm)
{
    const auto r = rand_funm(path2(0.1), FunctionTag::exponential, opts(1'000'000));
    EXPECT_NEAR(r.at(0, 0), std::cosh(0.1), 5e-3);
    EXPECT_NEAR(r.at(1, 1), std::cosh(0.1), 5e-3);
    EXPECT_NEAR(r.at(0, 1), std::sinh(0.1), 5e-3);
    EXPECT_NEAR(r.at(1, 0), std::sinh(0.1), 5e-3);
    EXPECT_EQ(r.stats.walks, 1'000'000u);
    EXPECT_EQ(r.stats.truncations, 0u);
}

TEST(RandFunm, ZeroMatrixIsIdentity)
{
    const auto r = rand_funm(SparseMatrix::from_triplets(3, {}), FunctionTag::exponential, opts(1000));
    for (index_t i = 0; i < 3; ++i)
        for (index_t j = 0; j < 3; ++j) EXPECT_EQ(r.at(i, j), i == j ? 1.0 : 0.0);
    EXPECT_EQ(r.stats.walks, 0u);
}

TEST(RandFunm, PathMatchesOracle)
{
    const auto a = path(3, 0.2);
    const auto r = rand_funm(a, FunctionTag::exponential, opts(1'000'000));
    const auto ref = dense_funm(a, FunctionTag::exponential, 30).value;
    for (index_t i = 0; i < 3; ++i)
        for (index_t j = 0; j < 3; ++j) EXPECT_NEAR(r.at(i, j), ref(i, j), 5e-3) << i << "," << j;
}

TEST(RandFunm, BlockSizeDoesNotChangeResult)
{
    const auto a = scale(gen_smallworld({24, 4, 0.2, 3}).matrix, 0.05);
    auto o = opts(20'000, 1e-8);
    const auto whole = rand_funm(a, FunctionTag::exponential, o);
    o.block_rows = 5;
    const auto blocked = rand_funm(a, FunctionTag::exponential, o);
    for (std::size_t e = 0; e < whole.values.size(); ++e)
        EXPECT_NEAR(blocked.values[e], whole.values[e], 1e-14 * std::abs(whole.values[e]));
}

TEST(RandFunm, DenseLimitIsAResourceError)
{
    auto o = opts(100);
    o.max_dense_entries = 8;
    EXPECT_THROW(rand_funm(cycle(4), FunctionTag::exponential, o), ResourceError);
}

TEST(RandFunmDiag, InvolutoryClosedForm)
{
    const auto r = rand_funm_diag(path2(0.1), FunctionTag::exponential, opts(1'000'000));
    ASSERT_EQ(r.values.size(), 2u);
    EXPECT_NEAR(r.values[0], std::cosh(0.1), 5e-3);
    EXPECT_NEAR(r.values[1], std::cosh(0.1), 5e-3);
}

TEST(RandFunmDiag, ZeroMatrix)
{
    const auto r = rand_funm_diag(SparseMatrix::from_triplets(4, {}), FunctionTag::exponential, opts(1000));
    EXPECT_EQ(r.values, (std::vector<double>(4, 1.0)));
}

TEST(RandFunmDiag, AgreesWithFullDiagonal)
{
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto a = scale(gen_smallworld({16, 4, 0.3, seed}).matrix, 0.1);
        const auto o = opts(50'000, 1e-8, seed);
        const auto full = rand_funm(a, FunctionTag::exponential, o).diagonal();
        const auto diag = rand_funm_diag(a, FunctionTag::exponential, o).values;
        for (std::size_t i = 0; i < diag.size(); ++i) EXPECT_NEAR(full[i], diag[i], 1e-12 * std::abs(diag[i]));
    }
}

TEST(RandFunmDiag, RowSubsetMatchesFullRun)
{
    const auto a = scale(gen_smallworld({20, 4, 0.3, 2}).matrix, 0.1);
    const auto o = opts(20'000, 1e-8);
    const auto all = rand_funm_diag(a, FunctionTag::exponential, o);
    const std::vector<index_t> rows{7, 2, 19};
    const auto some = rand_funm_diag(a, FunctionTag::exponential, o, rows);
    ASSERT_EQ(some.values.size(), 3u);
    EXPECT_EQ(some.indices, rows);
    for (std::size_t r = 0; r < rows.size(); ++r) EXPECT_EQ(some.values[r], all.values[rows[r]]);
    EXPECT_LT(some.stats.walks, all.stats.walks);
    EXPECT_THROW(rand_funm_diag(a, FunctionTag::exponential, o, std::vector<index_t>{20}), ArgumentError);
}

TEST(RandFunmDiag, ThreadCountDoesNotChangeDeterministicResult)
{
    const auto a = scale(gen_smallworld({64, 6, 0.2, 4}).matrix, 0.05);
    auto o = opts(100'000, 1e-8);
    const auto one = rand_funm_diag(a, FunctionTag::exponential, o);
    for (unsigned t : {2u, 4u, 8u}) {
        o.threads = t;
        const auto many = rand_funm_diag(a, FunctionTag::exponential, o);
        EXPECT_EQ(many.values, one.values);
        EXPECT_EQ(many.std_error, one.std_error);
        EXPECT_EQ(many.stats.emissions, one.stats.emissions);
    }
    o.threads = 4;
    o.mode = AccumulationMode::fast;
    const auto fast = rand_funm_diag(a, FunctionTag::exponential, o);
    for (std::size_t i = 0; i < one.values.size(); ++i) EXPECT_NEAR(fast.values[i], one.values[i], 1e-12);
}

TEST(RandFunmDiag, StandardErrorsAreCalibrated)
{
    // Across seeds, the oracle should fall within 3 reported standard errors
    // for the vast majority of entries.
    const auto a = scale(gen_smallworld({32, 4, 0.2, 8}).matrix, 0.1);
    const auto ref = dense_funm(a, FunctionTag::exponential).value.diagonal();
    int inside = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto r = rand_funm_diag(a, FunctionTag::exponential, opts(20'000, 1e-8, seed));
        for (std::size_t i = 0; i < ref.size(); ++i) {
            ASSERT_GT(r.std_error[i], 0.0);
            inside += std::abs(r.values[i] - ref[i]) <= 3.0 * r.std_error[i];
            ++total;
        }
    }
    EXPECT_GT(inside, 0.93 * total);
}

TEST(RandFunmAction, ZeroVector)
{
    const auto r = rand_funm_action(star3(0.2), FunctionTag::exponential, std::vector<double>(4, 0.0), opts(1000));
    EXPECT_EQ(r.values, (std::vector<double>(4, 0.0)));
}

TEST(RandFunmAction, ExponentialOfInvolution)
{
    const auto r = rand_funm_action(path2(0.1), FunctionTag::exponential, kOnes2, opts(1'000'000));
    EXPECT_NEAR(r.values[0], std::exp(0.1), 5e-3);
    EXPECT_NEAR(r.values[1], std::exp(0.1), 5e-3);
}

TEST(RandFunmAction, ResolventTwoNodePath)
{
    const auto r = rand_funm_action(path2(0.5), FunctionTag::resolvent, kOnes2, opts(1'000'000));
    EXPECT_NEAR(r.values[0], 2.0, 5e-3);
    EXPECT_NEAR(r.values[1], 2.0, 5e-3);
}

TEST(RandFunmAction, MatchesSeriesWithinErrors)
{
    const auto a = scale(gen_smallworld({40, 6, 0.2, 5}).matrix, 0.1);
    std::vector<double> v(40);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(static_cast<double>(i));
    const auto r = rand_funm_action(a, FunctionTag::exponential, v, opts(200'000, 1e-8));
    const auto ref = series_action(a, FunctionTag::exponential, v).value;
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(r.values[i], ref[i], 5.0 * r.std_error[i] + 1e-12);
}

TEST(RandFunmAction, ModesAndThreadsAgreeExactly)
{
    const auto a = scale(gen_smallworld({50, 4, 0.2, 6}).matrix, 0.1);
    const std::vector<double> v(50, 1.0);
    auto o = opts(50'000, 1e-8);
    const auto base = rand_funm_action(a, FunctionTag::exponential, v, o);
    o.threads = 4;
    o.mode = AccumulationMode::fast;
    EXPECT_EQ(rand_funm_action(a, FunctionTag::exponential, v, o).values, base.values);
}

TEST(RandFunmAction, LengthMismatch)
{
    EXPECT_THROW(rand_funm_action(path2(0.1), FunctionTag::exponential, std::vector<double>{1.0}, opts(10)),
                 ArgumentError);
}

TEST(RandFunmEntry, EmptyRowRunsNoWalks)
{
    const auto a = SparseMatrix::from_triplets(3, {{0, 1, 0.1}, {1, 0, 0.1}});
    const std::vector<double> v{1.0, 2.0, 3.0};
    const auto r = rand_funm_entry(a, FunctionTag::exponential, v, 2, opts(1000));
    EXPECT_EQ(r.values, (std::vector<double>{3.0}));
    EXPECT_EQ(r.stats.walks, 0u);
}

TEST(RandFunmEntry, InvolutionEntry)
{
    const auto r = rand_funm_entry(path2(0.1), FunctionTag::exponential, kOnes2, 0, opts(1'000'000));
    EXPECT_NEAR(r.values[0], std::exp(0.1), 5e-3);
}

TEST(RandFunmEntry, StarHubMatchesActionEvaluator)
{
    const auto a = star3(0.2);
    const std::vector<double> v(4, 1.0);
    const auto e = rand_funm_entry(a, FunctionTag::resolvent, v, 0, opts(1'000'000));
    const auto full = rand_funm_action(a, FunctionTag::resolvent, v, opts(1'000'000, 1e-10, 7));
    const double tol = 4.0 * std::hypot(e.std_error[0], full.std_error[0]) + 1e-9;
    EXPECT_NEAR(e.values[0], full.values[0], tol);
    // Hub of K_{1,3} under (I - 0.2 A)^{-1} 1 is 1.6 / 0.88.
    EXPECT_NEAR(e.values[0], 1.6 / 0.88, 5e-3);
}

TEST(McBaseline, ZeroMatrix)
{
    const auto r = mc_baseline(SparseMatrix::from_triplets(2, {}), FunctionTag::exponential, opts(100), McMode::full);
    EXPECT_EQ(r.values, (std::vector<double>{1.0, 0.0, 0.0, 1.0}));
}

TEST(McBaseline, DiagonalOfInvolution)
{
    const auto r = mc_baseline(path2(0.1), FunctionTag::exponential, opts(1'000'000), McMode::diagonal);
    EXPECT_NEAR(r.values[0], std::cosh(0.1), 1e-2);
    EXPECT_NEAR(r.values[1], std::cosh(0.1), 1e-2);
    EXPECT_EQ(r.stats.walks, 2'000'000u);
}

TEST(McBaseline, ModesAgreeWithOracle)
{
    const auto a = path(4, 0.3);
    const std::vector<double> v{1.0, -1.0, 2.0, 0.5};
    const auto ref = dense_funm(a, FunctionTag::exponential).value;
    const auto full = mc_baseline(a, FunctionTag::exponential, opts(200'000), McMode::full);
    for (std::size_t e = 0; e < ref.values.size(); ++e) EXPECT_NEAR(full.values[e], ref.values[e], 1e-2);
    const auto act = mc_baseline(a, FunctionTag::exponential, opts(200'000), McMode::action, v);
    const auto ref_act = series_action(a, FunctionTag::exponential, v).value;
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(act.values[i], ref_act[i], 5.0 * act.std_error[i] + 1e-12);
    const auto one = mc_baseline(a, FunctionTag::exponential, opts(200'000), McMode::entry, v, 2);
    EXPECT_EQ(one.values[0], act.values[2]);
}

TEST(McBaseline, PerRowBudget)
{
    EXPECT_EQ(per_row_samples(1000, 10), 100u);
    EXPECT_EQ(per_row_samples(5, 10), 1u);
}
