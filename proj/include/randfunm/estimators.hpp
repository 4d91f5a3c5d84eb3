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
#include "randfunm/parallel.hpp"
#include "randfunm/rng.hpp"
#include "randfunm/series.hpp"
#include "randfunm/sparse_matrix.hpp"
#include "randfunm/walker.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <new>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace randfunm {

enum class AccumulationMode {
    deterministic,  // per-column slots reduced in a fixed order
    fast,           // shared accumulators updated atomically
};

struct EstimatorOptions {
    WalkConfig walk;
    unsigned threads = 1;  // 0 selects the hardware concurrency
    AccumulationMode mode = AccumulationMode::deterministic;
    index_t block_rows = 1024;            // rows of Q live at once in full mode
    double error_sample_fraction = 0.01;  // walks traced for standard errors
    std::uint64_t min_error_samples = 16;
    std::uint64_t max_dense_entries = std::uint64_t{1} << 28;
};

struct WalkStats {
    std::uint64_t walks = 0;
    std::uint64_t emissions = 0;
    std::uint64_t truncations = 0;

    double mean_steps() const noexcept
    {
        return walks == 0 ? 0.0 : static_cast<double>(emissions) / static_cast<double>(walks);
    }

    WalkStats& operator+=(const WalkStats& o) noexcept
    {
        walks += o.walks;
        emissions += o.emissions;
        truncations += o.truncations;
        return *this;
    }
};

enum class PayloadKind { full, diagonal, vector, scalar };

/// Output of every evaluator. `values` holds an n x n row-major matrix, a
/// diagonal, a vector, or a single entry. `std_error` carries the estimated
/// standard error of the tracked outputs: the diagonal for matrix and
/// diagonal payloads, every entry otherwise.
struct FunmResult {
    PayloadKind kind = PayloadKind::vector;
    index_t n = 0;
    std::vector<double> values;
    std::vector<index_t> indices;  // rows of a partial diagonal; empty means all rows
    std::vector<double> std_error;
    WalkStats stats;
    WalkConfig config;
    FunctionTag function = FunctionTag::exponential;

    double at(index_t i, index_t j) const { return values[static_cast<std::size_t>(i * n + j)]; }

    std::vector<double> diagonal() const
    {
        if (kind != PayloadKind::full) return values;
        std::vector<double> d(static_cast<std::size_t>(n));
        for (index_t i = 0; i < n; ++i) d[i] = at(i, i);
        return d;
    }

    double max_std_error() const
    {
        double m = 0.0;
        for (double s : std_error) m = std::max(m, s);
        return m;
    }
};

namespace detail {

/// Dense accumulation row with a list of the touched slots.
class RowScratch {
public:
    explicit RowScratch(index_t n)
        : row_(static_cast<std::size_t>(n), 0.0), mark_(static_cast<std::size_t>(n), 0)
    {
    }

    void add(index_t j, double v)
    {
        if (!mark_[j]) {
            mark_[j] = 1;
            touched_.push_back(j);
        }
        row_[j] += v;
    }

    double operator[](index_t j) const { return row_[j]; }
    const std::vector<index_t>& touched() const noexcept { return touched_; }

    void clear()
    {
        for (auto j : touched_) {
            row_[j] = 0.0;
            mark_[j] = 0;
        }
        touched_.clear();
    }

    std::vector<std::pair<index_t, double>> trace;

private:
    std::vector<double> row_;
    std::vector<char> mark_;
    std::vector<index_t> touched_;
};

inline std::uint64_t traced_walks(const EstimatorOptions& o, std::uint64_t walks)
{
    const auto by_fraction = static_cast<std::uint64_t>(std::ceil(o.error_sample_fraction * static_cast<double>(walks)));
    return std::min(walks, std::max(by_fraction, o.min_error_samples));
}

/// Runs the `walks` walks that start at `column`, each with its own
/// counter-based stream and initial weight 1/walks.
template <class Emit, class Finish>
void walk_column(const TransitionModel& model, std::span<const double> coeffs, index_t column,
                 std::uint64_t stream, std::uint64_t walks, const WalkConfig& config,
                 WalkStats& stats, Emit&& emit, Finish&& finish)
{
    if (walks == 0) return;
    if (walks > std::numeric_limits<std::uint32_t>::max())
        throw ArgumentError("more than 2^32 walks from one column");
    const double w0 = 1.0 / static_cast<double>(walks);
    for (std::uint64_t s = 0; s < walks; ++s) {
        StreamRng rng(config.seed, stream, static_cast<std::uint32_t>(s));
        const auto out = run_walk(model, coeffs, column, w0, config, rng,
                                  [&](index_t k, index_t state, double value) { emit(s, k, state, value); });
        ++stats.walks;
        stats.emissions += static_cast<std::uint64_t>(out.emissions);
        stats.truncations += out.truncated ? 1 : 0;
        finish(s);
    }
}

/// Sample variance from running sums; zero with fewer than two samples.
inline double sample_variance(double sum, double sumsq, std::uint64_t count)
{
    if (count < 2) return 0.0;
    const auto m = static_cast<double>(count);
    return std::max(0.0, (sumsq - sum * sum / m) / (m - 1.0));
}

/// Per-walk variance of the diagonal terms a_ik <Q_k, C_i>, estimated from
/// traced walks. Slots follow the column-major index of A, so each slot is
/// written only by the worker that owns column k.
class DiagonalVariance {
public:
    explicit DiagonalVariance(const SparseMatrix& a)
        : sum_(static_cast<std::size_t>(a.nnz()), 0.0), sumsq_(static_cast<std::size_t>(a.nnz()), 0.0),
          count_(static_cast<std::size_t>(a.size()), 0)
    {
    }

    /// trace holds (state, coeff * W) of one walk started at column k with unit
    /// initial weight.
    void record(const SparseMatrix& a, index_t k, std::span<const std::pair<index_t, double>> trace)
    {
        const auto& rows = a.row_indices();
        for (index_t p = a.col_begin(k); p < a.col_end(k); ++p) {
            const auto i = rows[p];
            double z = 0.0;
            for (const auto& [state, value] : trace) z += value * a.at(state, i);
            sum_[p] += z;
            sumsq_[p] += z * z;
        }
        ++count_[k];
    }

    std::vector<double> std_error(const SparseMatrix& a, std::span<const std::uint64_t> walks) const
    {
        std::vector<double> var(static_cast<std::size_t>(a.size()), 0.0);
        const auto& rows = a.row_indices();
        const auto& vals = a.col_major_values();
        for (index_t k = 0; k < a.size(); ++k) {
            if (walks[k] == 0) continue;
            for (index_t p = a.col_begin(k); p < a.col_end(k); ++p) {
                const double v = sample_variance(sum_[p], sumsq_[p], count_[k]);
                var[rows[p]] += vals[p] * vals[p] * v / static_cast<double>(walks[k]);
            }
        }
        for (auto& x : var) x = std::sqrt(x);
        return var;
    }

private:
    std::vector<double> sum_;
    std::vector<double> sumsq_;
    std::vector<std::uint64_t> count_;
};

inline void check_vector(const SparseMatrix& a, std::span<const double> v)
{
    if (static_cast<index_t>(v.size()) != a.size())
        throw ArgumentError("vector length " + std::to_string(v.size()) + " does not match n = " +
                            std::to_string(a.size()));
    for (double x : v)
        if (!std::isfinite(x)) throw ArgumentError("vector has non-finite entries");
}

inline std::vector<double> dense_or_throw(std::uint64_t entries, const EstimatorOptions& o)
{
    if (entries > o.max_dense_entries)
        throw ResourceError("dense n x n result needs " + std::to_string(entries) +
                            " entries; use the diagonal or action evaluators instead");
    try {
        return std::vector<double>(static_cast<std::size_t>(entries), 0.0);
    } catch (const std::bad_alloc&) {
        throw ResourceError("cannot allocate the dense n x n result");
    }
}

inline std::vector<RowScratch> make_scratch(index_t n, unsigned threads)
{
    std::vector<RowScratch> s;
    const auto count = resolve_thread_count(threads);
    s.reserve(count);
    for (unsigned w = 0; w < count; ++w) s.emplace_back(n);
    return s;
}

inline FunmResult make_result(PayloadKind kind, index_t n, FunctionTag tag, const EstimatorOptions& o)
{
    FunmResult r;
    r.kind = kind;
    r.n = n;
    r.function = tag;
    r.config = o.walk;
    return r;
}

inline void atomic_add(double& target, double value)
{
    std::atomic_ref<double>(target).fetch_add(value, std::memory_order_relaxed);
}

// Streams of the classical estimator live in the upper half of the stream
// space so the two estimators never share random numbers.
inline constexpr std::uint64_t kClassicalStreamBit = std::uint64_t{1} << 63;

} // namespace detail

//---------------------------------------------------------------------------//
/*!
 * \brief Full matrix function F = c0 I + c1 A + A Q A.
 *
 * Row k of Q accumulates coeff_{k+2} W over the walks started at column k.
 * Rows of Q are produced block by block; each block is turned into Q_k A and
 * folded into F before the next block reuses the storage.
 */
inline FunmResult rand_funm(const SparseMatrix& a, FunctionTag tag, const EstimatorOptions& options)
{
    options.walk.validate();
    const auto n = a.size();
    auto result = detail::make_result(PayloadKind::full, n, tag, options);
    result.values = detail::dense_or_throw(static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n), options);
    result.std_error.assign(static_cast<std::size_t>(n), 0.0);
    auto& f = result.values;
    const double c0 = coeff(tag, 0);
    const double c1 = coeff(tag, 1);
    if (a.nnz() == 0) {
        for (index_t i = 0; i < n; ++i) f[i * n + i] = c0;
        return result;
    }

    const TransitionModel model(a);
    const auto budgets = allocate_walks(model, options.walk.samples);
    const auto coeffs = coeff_table(tag, 2, static_cast<std::size_t>(options.walk.max_steps));
    const auto threads = resolve_thread_count(options.threads);
    auto scratch = detail::make_scratch(n, threads);
    std::vector<WalkStats> stats(threads);
    detail::DiagonalVariance variance(a);

    const auto block = std::max<index_t>(1, std::min(options.block_rows, n));
    auto g = detail::dense_or_throw(static_cast<std::uint64_t>(block) * static_cast<std::uint64_t>(n), options);
    const auto& cols = a.col_indices();
    const auto& vals = a.row_major_values();

    for (index_t b0 = 0; b0 < n; b0 += block) {
        const auto b1 = std::min(n, b0 + block);
        parallel_for_dynamic(b1 - b0, threads, [&](unsigned w, index_t offset) {
            const auto k = b0 + offset;
            double* g_row = g.data() + offset * n;
            std::fill(g_row, g_row + n, 0.0);
            auto& sc = scratch[w];
            const auto walks = budgets[k];
            const auto traced = detail::traced_walks(options, walks);
            const double unit = static_cast<double>(walks);
            detail::walk_column(
                model, coeffs, k, static_cast<std::uint64_t>(k), walks, options.walk, stats[w],
                [&](std::uint64_t s, index_t, index_t state, double value) {
                    sc.add(state, value);
                    if (s < traced) sc.trace.emplace_back(state, value * unit);
                },
                [&](std::uint64_t s) {
                    if (s < traced) variance.record(a, k, sc.trace);
                    sc.trace.clear();
                });
            for (auto j : sc.touched()) {
                const double q = sc[j];
                for (index_t p = a.row_begin(j); p < a.row_end(j); ++p) g_row[cols[p]] += q * vals[p];
            }
            sc.clear();
        });
        parallel_for_dynamic(n, threads, [&](unsigned, index_t r) {
            const auto rc = a.row_cols(r);
            const auto first = std::lower_bound(rc.begin(), rc.end(), b0) - rc.begin();
            double* f_row = f.data() + r * n;
            for (auto p = a.row_begin(r) + first; p < a.row_end(r) && cols[p] < b1; ++p) {
                const double arc = vals[p];
                const double* g_row = g.data() + (cols[p] - b0) * n;
                for (index_t c = 0; c < n; ++c) f_row[c] += arc * g_row[c];
            }
        });
    }

    for (index_t i = 0; i < n; ++i) {
        f[i * n + i] += c0;
        for (index_t p = a.row_begin(i); p < a.row_end(i); ++p) f[i * n + cols[p]] += c1 * vals[p];
    }
    for (const auto& s : stats) result.stats += s;
    result.std_error = variance.std_error(a, budgets);
    return result;
}

//---------------------------------------------------------------------------//
/*!
 * \brief Diagonal d_i = c0 + c1 a_ii + sum_k a_ik <Q_k, C_i>.
 *
 * Each Q_k lives only while its column is processed. Columns with no
 * requested row are skipped entirely. `rows` selects a subset of the
 * diagonal (in the given order); empty means every row.
 *
 * In deterministic mode every term a_ik <Q_k, C_i> is written to its own
 * slot and reduced in column order afterwards, so the result does not
 * depend on the thread count. Fast mode adds into d atomically.
 */
inline FunmResult rand_funm_diag(const SparseMatrix& a, FunctionTag tag, const EstimatorOptions& options,
                                 std::span<const index_t> rows = {})
{
    options.walk.validate();
    const auto n = a.size();
    auto result = detail::make_result(PayloadKind::diagonal, n, tag, options);
    std::vector<char> requested(static_cast<std::size_t>(n), rows.empty() ? 1 : 0);
    for (auto i : rows) {
        if (i < 0 || i >= n) throw ArgumentError("diagonal row " + std::to_string(i) + " out of range");
        requested[i] = 1;
    }

    const double c0 = coeff(tag, 0);
    const double c1 = coeff(tag, 1);
    std::vector<double> d(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) d[i] = c0 + c1 * a.at(i, i);
    std::vector<double> se(static_cast<std::size_t>(n), 0.0);

    if (a.nnz() > 0) {
        const TransitionModel model(a);
        const auto budgets = allocate_walks(model, options.walk.samples);
        const auto coeffs = coeff_table(tag, 2, static_cast<std::size_t>(options.walk.max_steps));
        const auto threads = resolve_thread_count(options.threads);
        auto scratch = detail::make_scratch(n, threads);
        std::vector<WalkStats> stats(threads);
        detail::DiagonalVariance variance(a);
        const bool deterministic = options.mode == AccumulationMode::deterministic;
        std::vector<double> terms(deterministic ? static_cast<std::size_t>(a.nnz()) : 0, 0.0);
        const auto& crow = a.row_indices();
        const auto& cval = a.col_major_values();

        parallel_for_dynamic(n, threads, [&](unsigned w, index_t k) {
            bool needed = false;
            for (auto i : a.col_rows(k)) needed = needed || requested[i];
            if (!needed || budgets[k] == 0) return;
            auto& sc = scratch[w];
            const auto walks = budgets[k];
            const auto traced = detail::traced_walks(options, walks);
            const double unit = static_cast<double>(walks);
            detail::walk_column(
                model, coeffs, k, static_cast<std::uint64_t>(k), walks, options.walk, stats[w],
                [&](std::uint64_t s, index_t, index_t state, double value) {
                    sc.add(state, value);
                    if (s < traced) sc.trace.emplace_back(state, value * unit);
                },
                [&](std::uint64_t s) {
                    if (s < traced) variance.record(a, k, sc.trace);
                    sc.trace.clear();
                });
            for (index_t p = a.col_begin(k); p < a.col_end(k); ++p) {
                const auto i = crow[p];
                if (!requested[i]) continue;
                double inner = 0.0;
                for (index_t q = a.col_begin(i); q < a.col_end(i); ++q) inner += sc[crow[q]] * cval[q];
                if (deterministic)
                    terms[p] = cval[p] * inner;
                else
                    detail::atomic_add(d[i], cval[p] * inner);
            }
            sc.clear();
        });

        if (deterministic)
            for (index_t p = 0; p < a.nnz(); ++p) d[crow[p]] += terms[p];
        for (const auto& s : stats) result.stats += s;
        se = variance.std_error(a, budgets);
    }

    if (rows.empty()) {
        result.values = std::move(d);
        result.std_error = std::move(se);
    } else {
        result.indices.assign(rows.begin(), rows.end());
        for (auto i : rows) {
            result.values.push_back(d[i]);
            result.std_error.push_back(se[i]);
        }
    }
    return result;
}

namespace detail {

/// q_k for every column k with `active[k]`: the mean over the walks started
/// at k of sum_steps coeff_{k+2} W r_state, plus the variance of that mean.
inline void accumulate_action(const TransitionModel& model, FunctionTag tag, std::span<const double> r,
                              std::span<const index_t> columns, std::span<const std::uint64_t> budgets,
                              const EstimatorOptions& options, std::vector<double>& q,
                              std::vector<double>& q_var, WalkStats& total)
{
    const auto coeffs = coeff_table(tag, 2, static_cast<std::size_t>(options.walk.max_steps));
    const auto threads = resolve_thread_count(options.threads);
    std::vector<WalkStats> stats(threads);
    parallel_for_dynamic(static_cast<index_t>(columns.size()), threads, [&](unsigned w, index_t c) {
        const auto k = columns[c];
        const auto walks = budgets[c];
        if (walks == 0) return;
        const double unit = static_cast<double>(walks);
        double acc = 0.0, walk_sum = 0.0, sum = 0.0, sumsq = 0.0;
        detail::walk_column(
            model, coeffs, k, static_cast<std::uint64_t>(k), walks, options.walk, stats[w],
            [&](std::uint64_t, index_t, index_t state, double value) { walk_sum += value * r[state]; },
            [&](std::uint64_t) {
                acc += walk_sum;
                const double x = walk_sum * unit;
                sum += x;
                sumsq += x * x;
                walk_sum = 0.0;
            });
        q[k] = acc;
        q_var[k] = sample_variance(sum, sumsq, walks) / unit;
    });
    for (const auto& s : stats) total += s;
}

} // namespace detail

/// y = c0 v + c1 r + A q with r = A v; q_k sums coeff_{k+2} W r_state over
/// the walks from column k. Every q_k is owned by one worker, so both
/// accumulation modes give identical results.
inline FunmResult rand_funm_action(const SparseMatrix& a, FunctionTag tag, std::span<const double> v,
                                   const EstimatorOptions& options)
{
    options.walk.validate();
    detail::check_vector(a, v);
    const auto n = a.size();
    auto result = detail::make_result(PayloadKind::vector, n, tag, options);
    const auto r = a.multiply(v);
    const double c0 = coeff(tag, 0);
    const double c1 = coeff(tag, 1);
    std::vector<double> q(static_cast<std::size_t>(n), 0.0), q_var(static_cast<std::size_t>(n), 0.0);

    if (a.nnz() > 0) {
        const TransitionModel model(a);
        const auto budgets = allocate_walks(model, options.walk.samples);
        std::vector<index_t> columns(static_cast<std::size_t>(n));
        for (index_t k = 0; k < n; ++k) columns[k] = k;
        detail::accumulate_action(model, tag, r, columns, budgets, options, q, q_var, result.stats);
    }

    const auto aq = a.multiply(q);
    result.values.resize(static_cast<std::size_t>(n));
    result.std_error.assign(static_cast<std::size_t>(n), 0.0);
    for (index_t i = 0; i < n; ++i) {
        result.values[i] = c0 * v[i] + c1 * r[i] + aq[i];
        double var = 0.0;
        const auto cols = a.row_cols(i);
        const auto vals = a.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) var += vals[p] * vals[p] * q_var[cols[p]];
        result.std_error[i] = std::sqrt(var);
    }
    return result;
}

/// Single entry y_i of f(A) v. Walks start only at the columns j with
/// a_ij != 0, whose q_j are the only ones the final inner product reads;
/// the budget is spread over that support in proportion to the column norms.
inline FunmResult rand_funm_entry(const SparseMatrix& a, FunctionTag tag, std::span<const double> v,
                                  index_t i, const EstimatorOptions& options)
{
    options.walk.validate();
    detail::check_vector(a, v);
    const auto n = a.size();
    if (i < 0 || i >= n) throw ArgumentError("entry index " + std::to_string(i) + " out of range");
    auto result = detail::make_result(PayloadKind::scalar, n, tag, options);
    result.indices = {i};
    const double c0 = coeff(tag, 0);
    const double c1 = coeff(tag, 1);

    const auto support = a.row_cols(i);
    const auto weights = a.row_values(i);
    if (support.empty()) {
        result.values = {c0 * v[i]};
        result.std_error = {0.0};
        return result;
    }

    const auto r = a.multiply(v);
    const TransitionModel model(a);
    std::vector<double> norms;
    norms.reserve(support.size());
    for (auto j : support) norms.push_back(model.col_norms()[j]);
    const auto budgets = allocate_budget(norms, options.walk.samples);
    std::vector<double> q(static_cast<std::size_t>(n), 0.0), q_var(static_cast<std::size_t>(n), 0.0);
    detail::accumulate_action(model, tag, r, support, budgets, options, q, q_var, result.stats);

    double y = c0 * v[i] + c1 * r[i];
    double var = 0.0;
    for (std::size_t p = 0; p < support.size(); ++p) {
        y += weights[p] * q[support[p]];
        var += weights[p] * weights[p] * q_var[support[p]];
    }
    result.values = {y};
    result.std_error = {std::sqrt(var)};
    return result;
}

enum class McMode { full, diagonal, action, entry };

/// Walks per row that spend `global_budget` walks in total over n rows.
inline std::uint64_t per_row_samples(std::uint64_t global_budget, index_t n)
{
    if (n <= 0) return 1;
    return std::max<std::uint64_t>(1, global_budget / static_cast<std::uint64_t>(n));
}

//---------------------------------------------------------------------------//
/*!
 * \brief Classical single-entry Monte Carlo.
 *
 * `options.walk.samples` walks start from every row i (only from `entry` in
 * entry mode), each with W^(0) = 1/samples, and every step adds
 * coeff_k W^(k) to f_{i, state}. Diagonal mode still walks everywhere but
 * keeps only the visits back to i; action and entry modes accumulate
 * coeff_k W^(k) v_state into y_i.
 */
inline FunmResult mc_baseline(const SparseMatrix& a, FunctionTag tag, const EstimatorOptions& options,
                              McMode mode, std::span<const double> v = {}, index_t entry = 0)
{
    options.walk.validate();
    const auto n = a.size();
    if (mode == McMode::action || mode == McMode::entry) detail::check_vector(a, v);
    if (mode == McMode::entry && (entry < 0 || entry >= n))
        throw ArgumentError("entry index " + std::to_string(entry) + " out of range");

    const PayloadKind kind = mode == McMode::full       ? PayloadKind::full
                             : mode == McMode::diagonal ? PayloadKind::diagonal
                             : mode == McMode::action   ? PayloadKind::vector
                                                        : PayloadKind::scalar;
    auto result = detail::make_result(kind, n, tag, options);
    const double c0 = coeff(tag, 0);
    const auto out_rows = mode == McMode::entry ? index_t{1} : n;
    if (mode == McMode::full)
        result.values = detail::dense_or_throw(static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n), options);
    else
        result.values.assign(static_cast<std::size_t>(out_rows), 0.0);
    result.std_error.assign(static_cast<std::size_t>(out_rows), 0.0);
    if (mode == McMode::entry) result.indices = {entry};

    if (a.nnz() == 0) {
        for (index_t o = 0; o < out_rows; ++o) {
            const auto i = mode == McMode::entry ? entry : o;
            switch (mode) {
            case McMode::full: result.values[i * n + i] = c0; break;
            case McMode::diagonal: result.values[o] = c0; break;
            default: result.values[o] = c0 * v[i]; break;
            }
        }
        return result;
    }

    const TransitionModel model(a);
    const auto coeffs = coeff_table(tag, 0, static_cast<std::size_t>(options.walk.max_steps));
    const auto threads = resolve_thread_count(options.threads);
    std::vector<WalkStats> stats(threads);
    const auto walks = options.walk.samples;
    const double unit = static_cast<double>(walks);

    parallel_for_dynamic(out_rows, threads, [&](unsigned w, index_t o) {
        const auto i = mode == McMode::entry ? entry : o;
        double walk_sum = 0.0, sum = 0.0, sumsq = 0.0, acc = 0.0;
        double* f_row = mode == McMode::full ? result.values.data() + i * n : nullptr;
        detail::walk_column(
            model, coeffs, i, static_cast<std::uint64_t>(i) | detail::kClassicalStreamBit, walks,
            options.walk, stats[w],
            [&](std::uint64_t, index_t, index_t state, double value) {
                switch (mode) {
                case McMode::full:
                    f_row[state] += value;
                    if (state == i) walk_sum += value;
                    break;
                case McMode::diagonal:
                    if (state == i) walk_sum += value;
                    break;
                default: walk_sum += value * v[state]; break;
                }
            },
            [&](std::uint64_t) {
                acc += walk_sum;
                const double x = walk_sum * unit;
                sum += x;
                sumsq += x * x;
                walk_sum = 0.0;
            });
        if (mode != McMode::full) result.values[o] = acc;
        result.std_error[o] = std::sqrt(detail::sample_variance(sum, sumsq, walks) / unit);
    });
    for (const auto& s : stats) result.stats += s;
    return result;
}

} // namespace randfunm
