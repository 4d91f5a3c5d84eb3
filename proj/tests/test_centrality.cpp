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

#include "randfunm/centrality.hpp"
#include "randfunm/graph_gen.hpp"
#include "randfunm/oracle.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace randfunm;
using randfunm::testing::cycle;
using randfunm::testing::path2;
using randfunm::testing::star3;

namespace {

EstimatorOptions opts(std::uint64_t samples, std::uint64_t seed = 42)
{
    EstimatorOptions o;
    o.walk.samples = samples;
    o.walk.cutoff = 1e-10;
    o.walk.seed = seed;
    return o;
}

std::vector<index_t> degrees(const SparseMatrix& a)
{
    std::vector<index_t> d;
    for (index_t i = 0; i < a.size(); ++i) d.push_back(static_cast<index_t>(a.row_cols(i).size()));
    return d;
}

/// Degrees read along the ranking never increase.
bool follows_degree_order(const CentralityReport& r, const std::vector<index_t>& deg)
{
    for (std::size_t p = 1; p < r.ranking.size(); ++p)
        if (deg[r.ranking[p]] > deg[r.ranking[p - 1]]) return false;
    return true;
}

CentralityReport report_of(std::vector<double> scores)
{
    return detail::make_report(Measure::subgraph, "test", std::move(scores), {}, 1.0);
}

} // namespace

TEST(RankScores, DescendingWithIdTieBreak)
{
    const std::vector<double> s{1.0, 3.0, 3.0, 2.0};
    const std::vector<index_t> ids{10, 7, 5, 1};
    EXPECT_EQ(rank_scores(s, ids), (std::vector<index_t>{2, 1, 3, 0}));
    const std::vector<double> flat(8, 2.5);
    std::vector<index_t> id8(8);
    for (index_t i = 0; i < 8; ++i) id8[i] = i;
    EXPECT_EQ(rank_scores(flat, id8), id8);
}

TEST(Subgraph, TwoNodePath)
{
    const auto r = subgraph_centrality(path2(), 0.1, opts(1'000'000));
    EXPECT_NEAR(r.scores[0], std::cosh(0.1), 5e-3);
    EXPECT_NEAR(r.scores[1], std::cosh(0.1), 5e-3);
    // The walks on a two-node path are forced, so the two scores tie exactly.
    EXPECT_EQ(r.scores[0], r.scores[1]);
    EXPECT_EQ(r.ranking, (std::vector<index_t>{0, 1}));
    EXPECT_EQ(r.measure, Measure::subgraph);
}

TEST(Subgraph, EmptyGraphIsAnError)
{
    EXPECT_THROW(subgraph_centrality(SparseMatrix::from_triplets(0, {}), 0.1, opts(10)), DegenerateInputError);
}

TEST(Subgraph, RejectsDirectedInput)
{
    EXPECT_THROW(subgraph_centrality(SparseMatrix::from_triplets(2, {{0, 1, 1.0}}), 0.1, opts(10)), ArgumentError);
}

TEST(Subgraph, EightCycleIsFlat)
{
    const auto r = subgraph_centrality(cycle(8), 0.1, opts(200'000));
    const auto ref = dense_funm(scale(cycle(8), 0.1), FunctionTag::exponential).value(0, 0);
    const auto [lo, hi] = std::minmax_element(r.scores.begin(), r.scores.end());
    const double se = *std::max_element(r.std_error.begin(), r.std_error.end());
    EXPECT_LE(*hi - *lo, 6.0 * se);
    for (double s : r.scores) EXPECT_NEAR(s, ref, 4.0 * se);
    EXPECT_NEAR(estrada_index(r), 8.0 * ref, 8.0 * 4.0 * se);
}

TEST(TotalCommunicability, TwoNodePath)
{
    const auto r = total_communicability(path2(), 0.1, opts(1'000'000));
    EXPECT_NEAR(r.scores[0], std::exp(0.1), 5e-3);
    EXPECT_NEAR(r.scores[1], std::exp(0.1), 5e-3);
}

TEST(TotalCommunicability, StarHubLeads)
{
    const auto r = total_communicability(star3(), 0.1, opts(1'000'000));
    for (index_t leaf = 1; leaf < 4; ++leaf)
        EXPECT_GT(r.scores[0] - r.scores[leaf], 5.0 * (r.std_error[0] + r.std_error[leaf]));
    EXPECT_EQ(r.ranking[0], 0);
}

TEST(TotalCommunicability, TinyGammaFollowsDegree)
{
    const auto g = gen_smallworld({200, 6, 0.5, 4});
    const auto r = total_communicability(g.matrix, 1e-8, opts(100'000));
    EXPECT_TRUE(follows_degree_order(r, degrees(g.matrix)));
}

TEST(Katz, TwoNodePathBothMethods)
{
    const auto cg = katz_centrality_gamma(path2(), 0.5, opts(1), KatzMethod::cg);
    EXPECT_NEAR(cg.scores[0], 2.0, 1e-9);
    EXPECT_NEAR(cg.scores[1], 2.0, 1e-9);
    EXPECT_EQ(cg.method, "cg");
    const auto mc = katz_centrality_gamma(path2(), 0.5, opts(1'000'000), KatzMethod::randomized);
    EXPECT_NEAR(mc.scores[0], 2.0, 5e-3);
    EXPECT_NEAR(mc.scores[1], 2.0, 5e-3);
}

TEST(Katz, FourCycleMethodsAgree)
{
    auto o = opts(10'000'000);
    o.walk.cutoff = 1e-6;
    const auto rnd = katz_centrality(cycle(4), 0.85, o, KatzMethod::randomized);
    const auto cg = katz_centrality(cycle(4), 0.85, o, KatzMethod::cg);
    EXPECT_DOUBLE_EQ(rnd.gamma, 0.425);
    EXPECT_LE(relative_linf_error(rnd.scores, cg.scores), 1e-2);
}

TEST(Katz, TinyFractionFollowsDegree)
{
    const auto g = gen_smallworld({200, 6, 0.5, 5});
    const auto r = katz_centrality(g.matrix, 1e-6, opts(100'000), KatzMethod::randomized);
    EXPECT_TRUE(follows_degree_order(r, degrees(g.matrix)));
    const auto c = katz_centrality(g.matrix, 1e-6, opts(1), KatzMethod::cg);
    EXPECT_TRUE(follows_degree_order(c, degrees(g.matrix)));
}

TEST(Katz, RejectsDivergentResolvent)
{
    EXPECT_THROW(katz_centrality_gamma(star3(), 0.4, opts(100), KatzMethod::randomized), ArgumentError);
    EXPECT_NO_THROW(katz_centrality_gamma(star3(), 0.2, opts(100), KatzMethod::randomized));
}

TEST(Estrada, Examples)
{
    const auto r = subgraph_centrality(path2(), 0.1, opts(1'000'000));
    EXPECT_NEAR(estrada_index(r), 2.0 * std::cosh(0.1), 1e-2);
    const auto z = subgraph_centrality(SparseMatrix::from_triplets(5, {}), 0.3, opts(10));
    EXPECT_EQ(estrada_index(z), 5.0);
    const auto t = total_communicability(path2(), 0.1, opts(10));
    EXPECT_THROW(estrada_index(t), ArgumentError);
}

TEST(Correlation, Examples)
{
    const auto a = report_of({4, 3, 2, 1});
    EXPECT_DOUBLE_EQ(ranking_correlation(a, a, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(ranking_correlation(a, report_of({1, 2, 3, 4}), 1.0), -1.0);
    EXPECT_DOUBLE_EQ(ranking_correlation(report_of({10, 9, 1, 0}), report_of({10, 9.5, 1, 0}), 0.5), 1.0);
    EXPECT_THROW(ranking_correlation(a, a, 0.25), ArgumentError);
    EXPECT_THROW(ranking_correlation(a, report_of({1, 2}), 1.0), ArgumentError);
    EXPECT_TRUE(std::isnan(ranking_correlation(a, report_of({1, 1, 1, 1}), 1.0)));
}

TEST(Correlation, TopSetComesFromReference)
{
    // Node 3 tops the test ranking but not the reference one.
    const auto ref = report_of({5, 4, 3, 0});
    const auto test = report_of({5, 4, 3.5, 100});
    EXPECT_GT(ranking_correlation(ref, test, 0.75), 0.9);
}

TEST(RelativeError, Definition)
{
    EXPECT_DOUBLE_EQ(relative_linf_error(std::vector<double>{1, 2}, std::vector<double>{1, 4}), 0.5);
    EXPECT_THROW(relative_linf_error(std::vector<double>{1}, std::vector<double>{1, 4}), ArgumentError);
}

TEST(Report, OriginalIdsCarryThrough)
{
    const std::vector<index_t> ids{3, 9};
    const auto r = subgraph_centrality(path2(), 0.1, opts(1000), ids);
    EXPECT_EQ(r.node_ids, ids);
    EXPECT_THROW(subgraph_centrality(path2(), 0.1, opts(1000), std::vector<index_t>{1}), ArgumentError);
}
