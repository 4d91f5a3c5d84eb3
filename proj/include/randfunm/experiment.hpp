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

#include "randfunm/centrality.hpp"
#include "randfunm/errors.hpp"
#include "randfunm/estimators.hpp"
#include "randfunm/oracle.hpp"
#include "randfunm/series.hpp"
#include "randfunm/sparse_matrix.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace randfunm {

/// Least-squares slope of log(y) against log(x).
inline double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size() || xs.size() < 2) throw ArgumentError("slope fit needs at least two points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw ArgumentError("log-log fit needs positive values");
        mx += std::log(xs[i]);
        my += std::log(ys[i]);
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = std::log(xs[i]) - mx;
        sxy += dx * (std::log(ys[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw ArgumentError("slope fit needs distinct x values");
    return sxy / sxx;
}

/// First index from which the remaining errors spread by at most
/// 2 * noise, i.e. where the curve has flattened. Errors are ordered from
/// the loosest to the tightest setting.
inline std::size_t find_knee(std::span<const double> errors, double noise)
{
    if (errors.empty()) throw ArgumentError("knee search needs at least one point");
    std::size_t knee = errors.size() - 1;
    double lo = errors.back(), hi = errors.back();
    for (std::size_t j = errors.size() - 1; j-- > 0;) {
        lo = std::min(lo, errors[j]);
        hi = std::max(hi, errors[j]);
        if (hi - lo > 2.0 * noise) break;
        knee = j;
    }
    return knee;
}

enum class SweepKind { samples, cutoff };

inline SweepKind parse_sweep_kind(std::string_view name)
{
    if (name == "samples") return SweepKind::samples;
    if (name == "cutoff") return SweepKind::cutoff;
    throw ArgumentError("unknown sweep '" + std::string(name) + "'");
}

/// Coefficients of the measure's matrix function.
inline FunctionTag measure_function(Measure m)
{
    return m == Measure::katz ? FunctionTag::resolvent : FunctionTag::exponential;
}

/// Number of resolvent terms needed for the series tail to drop below tol.
inline std::size_t resolvent_terms(const SparseMatrix& scaled, double tol = 1e-16)
{
    const double norm = max_abs_row_sum(scaled);
    if (!(norm < 1.0)) throw ArgumentError("resolvent series diverges: max row sum >= 1");
    if (norm == 0.0) return 1;
    const auto terms = std::ceil(std::log(tol * (1.0 - norm)) / std::log(norm));
    return static_cast<std::size_t>(std::clamp(terms, 1.0, 100000.0));
}

/// Deterministic reference values for a measure on the already scaled
/// matrix: the dense series diagonal, or the series applied to 1.
inline std::vector<double> series_reference(const SparseMatrix& scaled, Measure m)
{
    const auto tag = measure_function(m);
    if (m == Measure::subgraph) return dense_funm(scaled, tag).value.diagonal();
    const std::vector<double> ones(static_cast<std::size_t>(scaled.size()), 1.0);
    const auto terms = tag == FunctionTag::resolvent ? resolvent_terms(scaled) : kDefaultOracleTerms;
    return series_action(scaled, tag, ones, terms).value;
}

/// Randomized estimate of the measure on the already scaled matrix.
inline FunmResult estimate_measure(const SparseMatrix& scaled, Measure m, const EstimatorOptions& options)
{
    if (m == Measure::subgraph) return rand_funm_diag(scaled, FunctionTag::exponential, options);
    const std::vector<double> ones(static_cast<std::size_t>(scaled.size()), 1.0);
    return rand_funm_action(scaled, measure_function(m), ones, options);
}

struct SweepRow {
    double value = 0.0;      // N_s or W_c
    double error = 0.0;      // relative l-infinity error against the reference
    double noise = 0.0;      // max standard error relative to max |reference|
    double elapsed_s = 0.0;
    WalkStats stats;
};

struct SweepTable {
    SweepKind kind = SweepKind::samples;
    std::vector<SweepRow> rows;
    std::optional<double> slope;
    std::optional<std::size_t> knee;
    std::string reference;  // "series" or "self:<samples>"
    std::vector<std::string> warnings;
};

struct ConvergenceSetup {
    Measure measure = Measure::subgraph;
    double gamma = 1e-3;
    EstimatorOptions options;
    SweepKind kind = SweepKind::samples;
    std::vector<double> values;
    std::uint64_t reference_samples = 0;  // > 0 forces a high-budget self reference
};

//---------------------------------------------------------------------------//
/*!
 * \brief Error of the randomized estimate as the sample budget or the weight
 * cutoff varies.
 *
 * The reference is the truncated series when it can be formed (subgraph
 * centrality needs n within the dense limit), otherwise a randomized run
 * with `reference_samples` walks. Sample sweeps report the log-log slope of
 * error against N_s; cutoff sweeps report the knee where the error stops
 * improving.
 */
inline SweepTable convergence_sweep(const SparseMatrix& a, const ConvergenceSetup& setup)
{
    if (setup.values.empty()) throw ArgumentError("sweep needs at least one value");
    if (a.nnz() == 0) throw DegenerateInputError("sweep needs a matrix with edges");
    const auto scaled = scale(a, setup.gamma);

    SweepTable table;
    table.kind = setup.kind;
    std::vector<double> reference;
    const bool series_ok = setup.measure != Measure::subgraph || scaled.size() <= kDenseOracleLimit;
    if (setup.reference_samples == 0 && series_ok) {
        reference = series_reference(scaled, setup.measure);
        table.reference = "series";
    } else if (setup.reference_samples > 0) {
        auto opts = setup.options;
        opts.walk.samples = setup.reference_samples;
        if (setup.kind == SweepKind::cutoff)
            for (double v : setup.values) opts.walk.cutoff = std::min(opts.walk.cutoff, v);
        opts.walk.seed = setup.options.walk.seed ^ 0x5eed5eed5eed5eedULL;
        reference = estimate_measure(scaled, setup.measure, opts).values;
        table.reference = "self:" + std::to_string(setup.reference_samples);
    } else {
        throw ArgumentError("no exact reference for n = " + std::to_string(a.size()) +
                            "; provide a high-budget reference run (--reference-samples)");
    }
    double ref_scale = 0.0;
    for (double r : reference) ref_scale = std::max(ref_scale, std::abs(r));

    for (double value : setup.values) {
        auto opts = setup.options;
        if (setup.kind == SweepKind::samples) {
            if (!(value >= 1.0)) throw ArgumentError("sample sweep values must be >= 1");
            opts.walk.samples = static_cast<std::uint64_t>(std::llround(value));
        } else {
            opts.walk.cutoff = value;
        }
        const auto start = std::chrono::steady_clock::now();
        const auto result = estimate_measure(scaled, setup.measure, opts);
        const auto stop = std::chrono::steady_clock::now();
        SweepRow row;
        row.value = value;
        row.error = relative_linf_error(result.values, reference);
        row.noise = ref_scale > 0.0 ? result.max_std_error() / ref_scale : 0.0;
        row.elapsed_s = std::chrono::duration<double>(stop - start).count();
        row.stats = result.stats;
        table.rows.push_back(row);
    }

    if (table.rows.size() < 2) {
        table.warnings.push_back("single sweep point: no trend fitted");
        return table;
    }
    std::vector<double> xs, ys;
    for (const auto& r : table.rows) {
        xs.push_back(r.value);
        ys.push_back(r.error);
    }
    if (setup.kind == SweepKind::samples) {
        bool positive = true;
        for (double y : ys) positive = positive && y > 0.0;
        if (positive)
            table.slope = fit_loglog_slope(xs, ys);
        else
            table.warnings.push_back("zero error at some budget: no slope fitted");
    } else {
        table.knee = find_knee(ys, table.rows.back().noise);
    }
    return table;
}

enum class Method { randfunm, randfunm_diag, randfunm_action, mc, cg, dense_oracle };

inline Method parse_method(std::string_view name)
{
    if (name == "randfunm") return Method::randfunm;
    if (name == "randfunm-diag") return Method::randfunm_diag;
    if (name == "randfunm-action") return Method::randfunm_action;
    if (name == "mc") return Method::mc;
    if (name == "cg") return Method::cg;
    if (name == "dense-oracle") return Method::dense_oracle;
    throw ArgumentError("unknown method '" + std::string(name) + "'");
}

inline std::string to_string(Method m)
{
    switch (m) {
    case Method::randfunm: return "randfunm";
    case Method::randfunm_diag: return "randfunm-diag";
    case Method::randfunm_action: return "randfunm-action";
    case Method::mc: return "mc";
    case Method::cg: return "cg";
    case Method::dense_oracle: return "dense-oracle";
    }
    throw ArgumentError("unknown method");
}

enum class BudgetSemantics {
    global,   // N_s walks in total; the classical estimator gets N_s / n per row
    per_row,  // N_s walks from every row for the classical estimator
};

inline BudgetSemantics parse_budget(std::string_view name)
{
    if (name == "global") return BudgetSemantics::global;
    if (name == "per-row") return BudgetSemantics::per_row;
    throw ArgumentError("unknown budget semantics '" + std::string(name) + "'");
}

inline bool method_supports(Method method, Measure measure)
{
    switch (method) {
    case Method::randfunm:
    case Method::mc:
    case Method::dense_oracle: return true;
    case Method::randfunm_diag: return measure == Measure::subgraph;
    case Method::randfunm_action: return measure != Measure::subgraph;
    case Method::cg: return measure == Measure::katz;
    }
    return false;
}

struct MethodRun {
    Method method = Method::randfunm;
    std::vector<double> scores;
    std::vector<double> std_error;
    double elapsed_s = 0.0;
    WalkStats stats;
};

/// Evaluates `measure` with `method` on A scaled by gamma.
inline MethodRun run_method(const SparseMatrix& a, Measure measure, double gamma, Method method,
                            const EstimatorOptions& options, BudgetSemantics budget = BudgetSemantics::global,
                            const CgOptions& cg = {})
{
    if (!method_supports(method, measure))
        throw ArgumentError("method " + to_string(method) + " cannot compute " + to_string(measure));
    const auto scaled = a.nnz() == 0 ? a : scale(a, gamma);
    const auto tag = measure_function(measure);
    const std::vector<double> ones(static_cast<std::size_t>(a.size()), 1.0);
    if (tag == FunctionTag::resolvent && method != Method::cg && !(alpha_diagnostic(scaled) < 1.0))
        throw ArgumentError("resolvent series needs alpha < 1 after scaling");

    MethodRun run;
    run.method = method;
    const auto start = std::chrono::steady_clock::now();
    auto take = [&](FunmResult&& r) {
        run.scores = std::move(r.values);
        run.std_error = std::move(r.std_error);
        run.stats = r.stats;
    };
    switch (method) {
    case Method::randfunm: {
        auto full = rand_funm(scaled, tag, options);
        run.stats = full.stats;
        if (measure == Measure::subgraph) {
            run.scores = full.diagonal();
            run.std_error = full.std_error;
        } else {
            run.scores.assign(static_cast<std::size_t>(a.size()), 0.0);
            for (index_t i = 0; i < a.size(); ++i)
                for (index_t j = 0; j < a.size(); ++j) run.scores[i] += full.at(i, j);
        }
        break;
    }
    case Method::randfunm_diag: take(rand_funm_diag(scaled, tag, options)); break;
    case Method::randfunm_action: take(rand_funm_action(scaled, tag, ones, options)); break;
    case Method::mc: {
        auto opts = options;
        if (budget == BudgetSemantics::global)
            opts.walk.samples = per_row_samples(options.walk.samples, a.size());
        take(measure == Measure::subgraph ? mc_baseline(scaled, tag, opts, McMode::diagonal)
                                          : mc_baseline(scaled, tag, opts, McMode::action, ones));
        break;
    }
    case Method::cg: run.scores = cg_solve(a, gamma, ones, cg.tolerance, cg.max_iterations).x; break;
    case Method::dense_oracle: run.scores = series_reference(scaled, measure); break;
    }
    run.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

struct CompareRow {
    Method method = Method::randfunm;
    double error = 0.0;         // relative l-infinity error against the reference
    double correlation = 0.0;   // Pearson over the reference's top nodes
    double elapsed_s = 0.0;
    WalkStats stats;
};

struct CompareTable {
    Method reference = Method::dense_oracle;
    std::vector<CompareRow> rows;
    double gap = 0.0;  // relative l-infinity gap between the first two methods
};

/// Runs every method on the same instance and seed and scores each against
/// the reference method.
inline CompareTable compare_methods(const SparseMatrix& a, Measure measure, double gamma,
                                    std::span<const Method> methods, Method reference,
                                    const EstimatorOptions& options, double top_fraction,
                                    BudgetSemantics budget = BudgetSemantics::global, const CgOptions& cg = {})
{
    if (methods.empty()) throw ArgumentError("compare needs at least one method");
    for (auto m : methods)
        if (!method_supports(m, measure))
            throw ArgumentError("method " + to_string(m) + " cannot compute " + to_string(measure));
    const auto ref = run_method(a, measure, gamma, reference, options, budget, cg);
    const auto ref_report = detail::make_report(measure, to_string(reference), ref.scores, {}, gamma);

    CompareTable table;
    table.reference = reference;
    std::vector<std::vector<double>> outputs;
    for (auto m : methods) {
        auto run = m == reference ? ref : run_method(a, measure, gamma, m, options, budget, cg);
        const auto report = detail::make_report(measure, to_string(m), run.scores, {}, gamma);
        CompareRow row;
        row.method = m;
        row.error = relative_linf_error(run.scores, ref.scores);
        row.correlation = ranking_correlation(ref_report, report, top_fraction);
        row.elapsed_s = run.elapsed_s;
        row.stats = run.stats;
        table.rows.push_back(row);
        outputs.push_back(std::move(run.scores));
    }
    if (outputs.size() >= 2) table.gap = relative_linf_error(outputs[1], outputs[0]);
    return table;
}

} // namespace randfunm
