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
#include "randfunm/estimators.hpp"
#include "randfunm/oracle.hpp"
#include "randfunm/series.hpp"
#include "randfunm/sparse_matrix.hpp"
#include "randfunm/walker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace randfunm {

enum class Measure { subgraph, total_communicability, katz };

inline std::string to_string(Measure m)
{
    switch (m) {
    case Measure::subgraph: return "subgraph";
    case Measure::total_communicability: return "total-comm";
    case Measure::katz: return "katz";
    }
    throw ArgumentError("unknown measure");
}

inline Measure parse_measure(std::string_view name)
{
    if (name == "subgraph") return Measure::subgraph;
    if (name == "total-comm" || name == "total-communicability") return Measure::total_communicability;
    if (name == "katz") return Measure::katz;
    throw ArgumentError("unknown centrality measure '" + std::string(name) + "'");
}

struct CentralityReport {
    Measure measure = Measure::subgraph;
    std::string method;              // "randomized", "cg", ...
    std::vector<double> scores;      // by matrix row
    std::vector<double> std_error;   // empty for deterministic methods
    std::vector<index_t> node_ids;   // original id of each row
    std::vector<index_t> ranking;    // rows by descending score
    double gamma = 0.0;
    WalkStats stats;

    index_t size() const noexcept { return static_cast<index_t>(scores.size()); }
};

/// Rows ordered by descending score; equal scores by ascending node id.
inline std::vector<index_t> rank_scores(std::span<const double> scores, std::span<const index_t> ids)
{
    std::vector<index_t> order(scores.size());
    std::iota(order.begin(), order.end(), index_t{0});
    std::stable_sort(order.begin(), order.end(), [&](index_t a, index_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return ids[a] < ids[b];
    });
    return order;
}

namespace detail {

inline CentralityReport make_report(Measure measure, std::string method, std::vector<double> scores,
                                    std::span<const index_t> ids, double gamma)
{
    CentralityReport r;
    r.measure = measure;
    r.method = std::move(method);
    r.scores = std::move(scores);
    r.gamma = gamma;
    if (ids.empty()) {
        r.node_ids.resize(r.scores.size());
        std::iota(r.node_ids.begin(), r.node_ids.end(), index_t{0});
    } else {
        if (ids.size() != r.scores.size()) throw ArgumentError("node id map does not match the matrix");
        r.node_ids.assign(ids.begin(), ids.end());
    }
    r.ranking = rank_scores(r.scores, r.node_ids);
    return r;
}

inline void require_symmetric(const SparseMatrix& a)
{
    if (a.size() == 0) throw DegenerateInputError("empty graph");
    if (!a.is_symmetric())
        throw ArgumentError("centrality needs a symmetric matrix; symmetrise directed graphs first");
}

inline SparseMatrix scaled(const SparseMatrix& a, double gamma)
{
    return a.nnz() == 0 ? a : scale(a, gamma);
}

} // namespace detail

/// Diagonal of exp(gamma A).
inline CentralityReport subgraph_centrality(const SparseMatrix& a, double gamma, const EstimatorOptions& options,
                                            std::span<const index_t> ids = {})
{
    detail::require_symmetric(a);
    auto result = rand_funm_diag(detail::scaled(a, gamma), FunctionTag::exponential, options);
    auto report = detail::make_report(Measure::subgraph, "randomized", std::move(result.values), ids, gamma);
    report.std_error = std::move(result.std_error);
    report.stats = result.stats;
    return report;
}

/// exp(gamma A) 1.
inline CentralityReport total_communicability(const SparseMatrix& a, double gamma,
                                              const EstimatorOptions& options, std::span<const index_t> ids = {})
{
    detail::require_symmetric(a);
    const std::vector<double> ones(static_cast<std::size_t>(a.size()), 1.0);
    auto result = rand_funm_action(detail::scaled(a, gamma), FunctionTag::exponential, ones, options);
    auto report =
        detail::make_report(Measure::total_communicability, "randomized", std::move(result.values), ids, gamma);
    report.std_error = std::move(result.std_error);
    report.stats = result.stats;
    return report;
}

enum class KatzMethod { randomized, cg };

struct CgOptions {
    double tolerance = 1e-10;
    int max_iterations = 10'000;
};

/// Solution of (I - gamma A) x = 1, either as the resolvent series applied to
/// 1 or by conjugate gradients.
inline CentralityReport katz_centrality_gamma(const SparseMatrix& a, double gamma, const EstimatorOptions& options,
                                              KatzMethod method, std::span<const index_t> ids = {},
                                              const CgOptions& cg = {})
{
    detail::require_symmetric(a);
    if (!(gamma > 0.0)) throw ArgumentError("Katz attenuation must be positive");
    const std::vector<double> ones(static_cast<std::size_t>(a.size()), 1.0);
    if (method == KatzMethod::cg) {
        auto solved = cg_solve(a, gamma, ones, cg.tolerance, cg.max_iterations);
        return detail::make_report(Measure::katz, "cg", std::move(solved.x), ids, gamma);
    }
    const auto m = detail::scaled(a, gamma);
    const double alpha = alpha_diagnostic(m);
    if (!(alpha < 1.0))
        throw ArgumentError("resolvent series needs alpha < 1 after scaling, got alpha = " + std::to_string(alpha));
    auto result = rand_funm_action(m, FunctionTag::resolvent, ones, options);
    auto report = detail::make_report(Measure::katz, "randomized", std::move(result.values), ids, gamma);
    report.std_error = std::move(result.std_error);
    report.stats = result.stats;
    return report;
}

/// Katz centrality with gamma = fraction / max_i sum_k |a_ik|.
inline CentralityReport katz_centrality(const SparseMatrix& a, double fraction, const EstimatorOptions& options,
                                        KatzMethod method, std::span<const index_t> ids = {},
                                        const CgOptions& cg = {})
{
    detail::require_symmetric(a);
    return katz_centrality_gamma(a, gershgorin_gamma(a, fraction), options, method, ids, cg);
}

/// Trace of exp(gamma A), from a subgraph-centrality report.
inline double estrada_index(const CentralityReport& report)
{
    if (report.measure != Measure::subgraph) throw ArgumentError("Estrada index needs subgraph centrality scores");
    double sum = 0.0;
    for (double s : report.scores) sum += s;
    return sum;
}

/// Pearson correlation of the two score vectors over the top
/// ceil(top_fraction * n) rows of the reference ranking. NaN when either
/// restricted vector is constant.
inline double ranking_correlation(const CentralityReport& ref, const CentralityReport& test, double top_fraction)
{
    if (ref.size() != test.size()) throw ArgumentError("reports cover different node sets");
    if (!(top_fraction > 0.0 && top_fraction <= 1.0)) throw ArgumentError("top fraction must lie in (0, 1]");
    const auto count = static_cast<index_t>(std::ceil(top_fraction * static_cast<double>(ref.size())));
    if (count < 2) throw ArgumentError("correlation needs at least two selected nodes");

    double mx = 0.0, my = 0.0;
    for (index_t r = 0; r < count; ++r) {
        mx += ref.scores[ref.ranking[r]];
        my += test.scores[ref.ranking[r]];
    }
    mx /= static_cast<double>(count);
    my /= static_cast<double>(count);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (index_t r = 0; r < count; ++r) {
        const double dx = ref.scores[ref.ranking[r]] - mx;
        const double dy = test.scores[ref.ranking[r]] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sxx * syy);
}

/// max_i |x_i - ref_i| / max_i |ref_i|
inline double relative_linf_error(std::span<const double> x, std::span<const double> ref)
{
    if (x.size() != ref.size()) throw ArgumentError("vectors differ in length");
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        err = std::max(err, std::abs(x[i] - ref[i]));
        scale = std::max(scale, std::abs(ref[i]));
    }
    return scale == 0.0 ? err : err / scale;
}

} // namespace randfunm
