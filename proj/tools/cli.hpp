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

#include "randfunm.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace randfunm::cli {

//---------------------------------------------------------------------------//
// Argument helpers
//---------------------------------------------------------------------------//

/// Positive integer written plainly or in scientific notation ("1e6").
inline std::uint64_t parse_count(const std::string& text, const std::string& what)
{
    std::uint64_t plain = 0;
    const auto* end = text.data() + text.size();
    if (auto [ptr, ec] = std::from_chars(text.data(), end, plain); ec == std::errc{} && ptr == end) {
        if (plain == 0) throw ArgumentError(what + " must be at least 1");
        return plain;
    }
    double value = 0.0;
    std::size_t used = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ArgumentError(what + ": '" + text + "' is not a number");
    }
    if (used != text.size()) throw ArgumentError(what + ": '" + text + "' is not a number");
    if (!(value >= 1.0) || value != std::floor(value) || value > 9.2e18)
        throw ArgumentError(what + " must be a positive integer, got '" + text + "'");
    return static_cast<std::uint64_t>(value);
}

inline double parse_real(const std::string& text, const std::string& what)
{
    double value = 0.0;
    std::size_t used = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ArgumentError(what + ": '" + text + "' is not a number");
    }
    if (used != text.size() || !std::isfinite(value)) throw ArgumentError(what + ": '" + text + "' is not a number");
    return value;
}

/// "key=value" tokens after the generator name.
inline std::map<std::string, std::string> parse_pairs(const std::vector<std::string>& tokens)
{
    std::map<std::string, std::string> out;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
        const auto eq = tokens[t].find('=');
        if (eq == std::string::npos || eq == 0) throw ArgumentError("generator parameter '" + tokens[t] + "' is not key=value");
        out[tokens[t].substr(0, eq)] = tokens[t].substr(eq + 1);
    }
    return out;
}

inline Graph generate_graph(const std::vector<std::string>& args)
{
    if (args.empty()) throw ArgumentError("--generate needs a generator name");
    auto pairs = parse_pairs(args);
    auto take = [&](const char* key) -> std::optional<std::string> {
        auto it = pairs.find(key);
        if (it == pairs.end()) return std::nullopt;
        auto v = it->second;
        pairs.erase(it);
        return v;
    };
    Graph g;
    if (args[0] == "smallworld") {
        SmallWorldParams p;
        if (auto v = take("n")) p.n = static_cast<index_t>(parse_count(*v, "n"));
        if (auto v = take("k")) p.k = static_cast<index_t>(parse_count(*v, "k"));
        if (auto v = take("p")) p.rewire_prob = parse_real(*v, "p");
        if (auto v = take("seed")) p.seed = parse_count(*v, "seed");
        if (!pairs.empty()) throw ArgumentError("unknown smallworld parameter '" + pairs.begin()->first + "'");
        g = gen_smallworld(p);
    } else if (args[0] == "kronecker") {
        KroneckerParams p;
        if (auto v = take("scale")) p.scale = static_cast<int>(parse_count(*v, "scale"));
        if (auto v = take("edge_factor")) p.edge_factor = static_cast<index_t>(parse_count(*v, "edge_factor"));
        if (auto v = take("pa")) p.pa = parse_real(*v, "pa");
        if (auto v = take("pb")) p.pb = parse_real(*v, "pb");
        if (auto v = take("pc")) p.pc = parse_real(*v, "pc");
        if (auto v = take("seed")) p.seed = parse_count(*v, "seed");
        if (!pairs.empty()) throw ArgumentError("unknown kronecker parameter '" + pairs.begin()->first + "'");
        g = gen_kronecker(p);
    } else {
        throw ArgumentError("unknown generator '" + args[0] + "' (smallworld, kronecker)");
    }
    return g;
}

//---------------------------------------------------------------------------//
// Run setup
//---------------------------------------------------------------------------//

struct Input {
    SparseMatrix matrix;
    std::vector<index_t> ids;
    bool blocks = false;  // rows split into out/in halves of a symmetrised digraph
};

inline Input load_input(const RunConfig& c, std::ostream& err)
{
    if (c.input.empty() == c.generate.empty()) throw ArgumentError("give exactly one of --input or --generate");
    Graph g;
    if (!c.generate.empty()) {
        g = generate_graph(c.generate);
    } else {
        GraphSource src;
        src.path = c.input;
        src.directed = c.directed;
        src.filters = {!c.keep_loops, !c.keep_duplicates, !c.keep_isolated};
        if (c.format == "auto")
            src.format = guess_format(src.path);
        else if (c.format == "edges")
            src.format = GraphFormat::edge_list;
        else if (c.format == "mtx")
            src.format = GraphFormat::matrix_market;
        else
            throw ArgumentError("unknown format '" + c.format + "' (auto, edges, mtx)");
        g = load_graph(src);
    }

    Input in;
    if (g.directed && !g.matrix.is_symmetric()) {
        if (!c.symmetrize)
            throw ArgumentError("directed input: centrality needs a symmetric matrix; pass --symmetrize to use the "
                                "bipartite form [[0, A], [A^T, 0]] (rows 0..n-1 out-block, n..2n-1 in-block)");
        in.matrix = symmetrize_digraph(g.matrix);
        in.ids = g.original_ids;
        in.ids.insert(in.ids.end(), g.original_ids.begin(), g.original_ids.end());
        in.blocks = true;
    } else {
        if (c.symmetrize) err << "warning: input is already symmetric; --symmetrize ignored\n";
        in.matrix = std::move(g.matrix);
        in.ids = std::move(g.original_ids);
    }
    return in;
}

inline double resolve_gamma(const RunConfig& c, Measure m, const SparseMatrix& a)
{
    if (c.gamma && c.fraction) throw ArgumentError("give either --gamma or --fraction, not both");
    if (c.gamma) {
        if (!(*c.gamma > 0.0)) throw ArgumentError("--gamma must be positive");
        return *c.gamma;
    }
    if (c.fraction) return gershgorin_gamma(a, *c.fraction);
    switch (m) {
    case Measure::subgraph: return 1e-3;
    case Measure::total_communicability: return 1e-5;
    case Measure::katz: return gershgorin_gamma(a, 0.85);
    }
    return 1e-3;
}

inline EstimatorOptions estimator_options(const RunConfig& c)
{
    EstimatorOptions o;
    o.walk.samples = c.samples;
    o.walk.cutoff = c.cutoff;
    o.walk.max_steps = c.max_steps;
    o.walk.seed = c.seed;
    if (c.mode == "deterministic")
        o.mode = AccumulationMode::deterministic;
    else if (c.mode == "fast")
        o.mode = AccumulationMode::fast;
    else
        throw ArgumentError("unknown mode '" + c.mode + "' (deterministic, fast)");
    o.threads = c.threads;
    if (c.block_rows < 1) throw ArgumentError("--block-rows must be at least 1");
    o.block_rows = c.block_rows;
    o.walk.validate();
    return o;
}

inline CgOptions cg_options(const RunConfig& c)
{
    if (!(c.cg_tolerance > 0.0)) throw ArgumentError("--cg-tol must be positive");
    if (c.cg_max_iterations < 1) throw ArgumentError("--cg-max-iter must be at least 1");
    return {c.cg_tolerance, c.cg_max_iterations};
}

/// Compute methods: "randomized" picks the natural randomized evaluator of
/// the measure, "both" is Katz randomized plus cg, anything else is a
/// method name.
inline std::vector<Method> compute_methods(const std::string& name, Measure m)
{
    const Method randomized = m == Measure::subgraph ? Method::randfunm_diag : Method::randfunm_action;
    if (name == "randomized") return {randomized};
    if (name == "both") {
        if (m != Measure::katz) throw ArgumentError("--method both is only defined for katz");
        return {randomized, Method::cg};
    }
    const auto method = parse_method(name);
    if (!method_supports(method, m))
        throw ArgumentError("method " + name + " cannot compute " + to_string(m));
    return {method};
}

/// Checks every field before any computation starts.
inline void validate(const RunConfig& c)
{
    static const std::vector<std::string> commands{"compute", "generate", "convergence", "compare"};
    if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
        throw ArgumentError("unknown command '" + c.command + "'");
    if (c.command == "generate") {
        if (c.generate.empty()) throw ArgumentError("generate needs a generator name");
        return;
    }
    const auto m = parse_measure(c.measure);
    estimator_options(c);
    cg_options(c);
    parse_budget(c.budget);
    if (!(c.top_fraction > 0.0 && c.top_fraction <= 1.0)) throw ArgumentError("--top-fraction must lie in (0, 1]");
    if (c.gamma && c.fraction) throw ArgumentError("give either --gamma or --fraction, not both");
    if (c.command == "compute") compute_methods(c.method, m);
    if (c.command == "convergence") {
        parse_sweep_kind(c.sweep);
        if (c.sweep_values.empty()) throw ArgumentError("convergence needs --values");
    }
    if (c.command == "compare") {
        if (c.methods.size() != 2) throw ArgumentError("compare needs exactly two --methods");
        for (const auto& name : c.methods)
            if (!method_supports(parse_method(name), m))
                throw ArgumentError("method " + name + " cannot compute " + c.measure);
        if (!method_supports(parse_method(c.reference), m))
            throw ArgumentError("reference " + c.reference + " cannot compute " + c.measure);
    }
}

//---------------------------------------------------------------------------//
// Output
//---------------------------------------------------------------------------//

/// Writes to `path`, or to `fallback` when the path is empty.
template <class Fn>
void write_to(const std::string& path, std::ostream& fallback, Fn&& fn)
{
    if (path.empty()) {
        fn(fallback);
        return;
    }
    std::ofstream out(path);
    if (!out) throw ResourceError("cannot write '" + path + "'");
    fn(out);
    if (!out) throw ResourceError("failed writing '" + path + "'");
}

/// "scores.csv" -> "scores.cg.csv"
inline std::string tagged_path(const std::string& path, const std::string& tag)
{
    if (path.empty()) return path;
    std::filesystem::path p(path);
    auto name = p.stem().string() + "." + tag + p.extension().string();
    return (p.parent_path() / name).string();
}

inline void summary(std::ostream& err, const std::string& label, const SparseMatrix& a, const WalkStats& s,
                    double seconds)
{
    err << label << ": n=" << a.size() << " nnz=" << a.nnz() << " walks=" << s.walks << " mean_steps="
        << std::setprecision(4) << s.mean_steps() << " truncations=" << s.truncations
        << " elapsed=" << std::setprecision(3) << seconds << "s\n";
    if (s.truncations > 0)
        err << "warning: " << s.truncations
            << " walks hit the step cap; the weights are not decaying (is gamma * max row sum >= 1?)\n";
}

//---------------------------------------------------------------------------//
// Commands
//---------------------------------------------------------------------------//

inline int cmd_generate(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const auto g = generate_graph(c.generate);
    write_to(c.output, out, [&](std::ostream& o) { write_edge_list(g, o); });
    err << "generate " << c.generate[0] << ": nodes=" << g.size() << " edges=" << g.edge_count()
        << " nnz=" << g.matrix.nnz() << "\n";
    return 0;
}

inline int cmd_compute(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const auto measure = parse_measure(c.measure);
    const auto input = load_input(c, err);
    const auto gamma = resolve_gamma(c, measure, input.matrix);
    const auto options = estimator_options(c);
    const auto methods = compute_methods(c.method, measure);

    std::vector<CentralityReport> reports;
    for (auto m : methods) {
        const auto run = run_method(input.matrix, measure, gamma, m, options, parse_budget(c.budget), cg_options(c));
        const bool default_randomized = m == methods.front() && c.method != "cg" &&
                                        (c.method == "randomized" || c.method == "both");
        auto report = detail::make_report(measure, default_randomized ? "randomized" : to_string(m), run.scores,
                                          input.ids, gamma);
        report.std_error = run.std_error;
        report.stats = run.stats;
        summary(err, "compute " + c.measure + " [" + report.method + "]", input.matrix, run.stats, run.elapsed_s);
        reports.push_back(std::move(report));
    }

    if (reports.size() == 1) {
        write_to(c.output, out, [&](std::ostream& o) { write_csv(o, reports[0], c, input.blocks); });
        if (!c.json_output.empty())
            write_to(c.json_output, out, [&](std::ostream& o) {
                o << report_json(reports[0], c, input.matrix.nnz(), input.blocks).dump(2) << "\n";
            });
        return 0;
    }

    const double gap = relative_linf_error(reports[0].scores, reports[1].scores);
    err << "relative l-infinity gap " << reports[0].method << " vs " << reports[1].method << ": "
        << std::setprecision(6) << gap << "\n";
    for (const auto& r : reports)
        write_to(tagged_path(c.output, r.method), out, [&](std::ostream& o) { write_csv(o, r, c, input.blocks); });
    if (!c.json_output.empty())
        write_to(c.json_output, out, [&](std::ostream& o) {
            nlohmann::json j{{"version", kVersion}, {"config", c}, {"gap", gap}, {"reports", nlohmann::json::array()}};
            for (const auto& r : reports) j["reports"].push_back(report_json(r, c, input.matrix.nnz(), input.blocks));
            o << j.dump(2) << "\n";
        });
    return 0;
}

inline int cmd_convergence(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const auto measure = parse_measure(c.measure);
    const auto input = load_input(c, err);
    ConvergenceSetup setup;
    setup.measure = measure;
    setup.gamma = resolve_gamma(c, measure, input.matrix);
    setup.options = estimator_options(c);
    setup.kind = parse_sweep_kind(c.sweep);
    setup.values = c.sweep_values;
    setup.reference_samples = c.reference_samples;
    const auto table = convergence_sweep(input.matrix, setup);
    for (const auto& w : table.warnings) err << "warning: " << w << "\n";

    write_to(c.output, out, [&](std::ostream& o) {
        o << "# randfunm " << kVersion << "\n";
        o << "# config " << nlohmann::json(c).dump() << "\n";
        o << "# reference " << table.reference << "\n";
        if (table.slope) o << "# slope " << format_double(*table.slope) << "\n";
        if (table.knee) o << "# knee " << format_double(table.rows[*table.knee].value) << "\n";
        o << c.sweep << ",error,noise,elapsed_s,walks,mean_steps,truncations\n";
        for (const auto& r : table.rows)
            o << format_double(r.value) << ',' << format_double(r.error) << ',' << format_double(r.noise) << ','
              << format_double(r.elapsed_s) << ',' << r.stats.walks << ',' << format_double(r.stats.mean_steps())
              << ',' << r.stats.truncations << '\n';
    });
    if (!c.json_output.empty())
        write_to(c.json_output, out, [&](std::ostream& o) {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& r : table.rows)
                rows.push_back({{"value", r.value},
                                {"error", r.error},
                                {"noise", r.noise},
                                {"elapsed_s", r.elapsed_s},
                                {"stats", stats_json(r.stats)}});
            nlohmann::json j{{"version", kVersion}, {"config", c},          {"gamma", setup.gamma},
                             {"reference", table.reference}, {"rows", rows}, {"warnings", table.warnings}};
            j["slope"] = table.slope ? nlohmann::json(*table.slope) : nlohmann::json(nullptr);
            j["knee"] = table.knee ? nlohmann::json(table.rows[*table.knee].value) : nlohmann::json(nullptr);
            o << j.dump(2) << "\n";
        });
    if (table.slope) err << "fitted log-log slope " << std::setprecision(4) << *table.slope << "\n";
    if (table.knee) err << "knee at " << c.sweep << " = " << table.rows[*table.knee].value << "\n";
    return 0;
}

inline int cmd_compare(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const auto measure = parse_measure(c.measure);
    const auto input = load_input(c, err);
    const double gamma = resolve_gamma(c, measure, input.matrix);
    std::vector<Method> methods;
    for (const auto& name : c.methods) methods.push_back(parse_method(name));
    const auto table = compare_methods(input.matrix, measure, gamma, methods, parse_method(c.reference),
                                       estimator_options(c), c.top_fraction, parse_budget(c.budget),
                                       cg_options(c));
    write_to(c.output, out, [&](std::ostream& o) {
        o << "# randfunm " << kVersion << "\n";
        o << "# config " << nlohmann::json(c).dump() << "\n";
        o << "# reference " << to_string(table.reference) << "\n";
        o << "# gap " << format_double(table.gap) << "\n";
        o << "method,error,correlation,elapsed_s,walks,mean_steps\n";
        for (const auto& r : table.rows)
            o << to_string(r.method) << ',' << format_double(r.error) << ',' << format_double(r.correlation) << ','
              << format_double(r.elapsed_s) << ',' << r.stats.walks << ',' << format_double(r.stats.mean_steps())
              << '\n';
    });
    if (!c.json_output.empty())
        write_to(c.json_output, out, [&](std::ostream& o) {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& r : table.rows)
                rows.push_back({{"method", to_string(r.method)},
                                {"error", r.error},
                                {"correlation", std::isnan(r.correlation) ? nlohmann::json(nullptr)
                                                                          : nlohmann::json(r.correlation)},
                                {"elapsed_s", r.elapsed_s},
                                {"stats", stats_json(r.stats)}});
            nlohmann::json j{{"version", kVersion}, {"config", c},  {"gamma", gamma},
                             {"reference", to_string(table.reference)}, {"gap", table.gap}, {"rows", rows}};
            o << j.dump(2) << "\n";
        });
    err << "compare " << c.methods[0] << " vs " << c.methods[1] << ": gap " << std::setprecision(6) << table.gap
        << "\n";
    return 0;
}

inline int run_config(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    validate(c);
    if (c.command == "generate") return cmd_generate(c, out, err);
    if (c.command == "compute") return cmd_compute(c, out, err);
    if (c.command == "convergence") return cmd_convergence(c, out, err);
    return cmd_compare(c, out, err);
}

inline int exit_code(Error::Kind kind)
{
    switch (kind) {
    case Error::Kind::argument: return 1;
    case Error::Kind::data: return 2;
    case Error::Kind::numerical: return 3;
    case Error::Kind::resource: return 4;
    }
    return 1;
}

inline const char* kind_name(Error::Kind kind)
{
    switch (kind) {
    case Error::Kind::argument: return "usage";
    case Error::Kind::data: return "data";
    case Error::Kind::numerical: return "numerical";
    case Error::Kind::resource: return "resource";
    }
    return "usage";
}

//---------------------------------------------------------------------------//
// Argument parsing
//---------------------------------------------------------------------------//

/// Raw strings for flags whose parsing needs scientific notation support.
struct RawFlags {
    std::string samples, max_steps, seed, block_rows, reference_samples, threads;
    std::vector<std::string> values;
    std::optional<double> gamma, fraction;
};

inline void add_input_flags(CLI::App& sub, RunConfig& c)
{
    sub.add_option("--input", c.input, "graph file (edge list or Matrix Market)");
    sub.add_option("--format", c.format, "auto, edges or mtx")->check(CLI::IsMember({"auto", "edges", "mtx"}));
    sub.add_flag("--directed", c.directed, "read the edge list as directed");
    sub.add_flag("--symmetrize", c.symmetrize, "embed a digraph as [[0, A], [A^T, 0]]");
    sub.add_flag("--keep-loops", c.keep_loops, "keep self-loops");
    sub.add_flag("--keep-duplicates", c.keep_duplicates, "sum repeated edges instead of dropping them");
    sub.add_flag("--keep-isolated", c.keep_isolated, "keep ids without edges");
    sub.add_option("--generate", c.generate, "generator and key=value parameters, e.g. smallworld n=1024 k=10 p=0.1")
        ->expected(1, -1);
}

inline void add_estimator_flags(CLI::App& sub, RunConfig& c, RawFlags& raw)
{
    sub.add_option("--gamma", raw.gamma, "matrix scaling");
    sub.add_option("--fraction", raw.fraction, "gamma = fraction / max row sum");
    sub.add_option("--samples", raw.samples, "total walks N_s (1e6 notation accepted)");
    sub.add_option("--cutoff", c.cutoff, "relative weight cutoff W_c");
    sub.add_option("--max-steps", raw.max_steps, "step cap per walk");
    sub.add_option("--seed", raw.seed, "random seed");
    sub.add_option("--threads", raw.threads, "worker threads (default: 1 deterministic, all cores fast)");
    sub.add_option("--mode", c.mode, "deterministic or fast")->check(CLI::IsMember({"deterministic", "fast"}));
    sub.add_option("--block-rows", raw.block_rows, "rows of Q held at once in full mode");
    sub.add_option("--budget", c.budget, "walk budget of the classical method: global or per-row")
        ->check(CLI::IsMember({"global", "per-row"}));
    sub.add_option("--cg-tol", c.cg_tolerance, "relative residual tolerance of conjugate gradients");
    sub.add_option("--cg-max-iter", c.cg_max_iterations, "iteration cap of conjugate gradients");
    sub.add_option("--output", c.output, "CSV output path (default: stdout)");
    sub.add_option("--json", c.json_output, "JSON report path");
}

inline void apply_raw(RunConfig& c, const RawFlags& raw)
{
    if (!raw.samples.empty()) c.samples = parse_count(raw.samples, "--samples");
    if (!raw.max_steps.empty()) c.max_steps = static_cast<std::int64_t>(parse_count(raw.max_steps, "--max-steps"));
    if (!raw.seed.empty()) {
        std::uint64_t s = 0;
        const auto* end = raw.seed.data() + raw.seed.size();
        if (auto [ptr, ec] = std::from_chars(raw.seed.data(), end, s); ec != std::errc{} || ptr != end)
            throw ArgumentError("--seed must be a non-negative integer");
        c.seed = s;
    }
    if (!raw.block_rows.empty())
        c.block_rows = static_cast<std::int64_t>(parse_count(raw.block_rows, "--block-rows"));
    if (!raw.reference_samples.empty())
        c.reference_samples = parse_count(raw.reference_samples, "--reference-samples");
    if (!raw.threads.empty())
        c.threads = static_cast<unsigned>(parse_count(raw.threads, "--threads"));
    else
        c.threads = c.mode == "fast" ? resolve_thread_count(0) : 1;
    for (const auto& v : raw.values) c.sweep_values.push_back(parse_real(v, "--values"));
    c.gamma = raw.gamma;
    c.fraction = raw.fraction;
}

/// Parses argv and runs. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Randomized matrix-function estimates and network centrality"};
    app.name("randfunm");
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(0, 1);

    std::string replay, replay_output, replay_json;
    app.add_option("--replay", replay, "re-run the configuration embedded in a CSV or JSON artifact");
    app.add_option("--replay-output", replay_output, "CSV path for the replayed run (default: stdout)");
    app.add_option("--replay-json", replay_json, "JSON path for the replayed run");

    RunConfig c;
    RawFlags raw;

    auto* compute = app.add_subcommand("compute", "centrality scores of one graph");
    compute->add_option("measure", c.measure, "subgraph, total-comm or katz")->required();
    compute->add_option("--method", c.method, "randomized, cg, both, or a method name");
    add_input_flags(*compute, c);
    add_estimator_flags(*compute, c, raw);

    auto* generate = app.add_subcommand("generate", "write a synthetic graph as an edge list");
    generate->add_option("generator", c.generate, "smallworld|kronecker followed by key=value parameters")
        ->required()
        ->expected(1, -1);
    generate->add_option("--output", c.output, "edge list path (default: stdout)");

    auto* convergence = app.add_subcommand("convergence", "error against N_s or W_c");
    convergence->add_option("measure", c.measure, "subgraph, total-comm or katz")->required();
    convergence->add_option("--sweep", c.sweep, "samples or cutoff")->check(CLI::IsMember({"samples", "cutoff"}));
    convergence->add_option("--values", raw.values, "comma separated sweep values")->delimiter(',')->required();
    convergence->add_option("--reference-samples", raw.reference_samples,
                            "walks of a randomized reference run when no exact reference exists");
    add_input_flags(*convergence, c);
    add_estimator_flags(*convergence, c, raw);

    auto* compare = app.add_subcommand("compare", "two methods on the same instance and seed");
    compare->add_option("measure", c.measure, "subgraph, total-comm or katz")->required();
    compare->add_option("--methods", c.methods, "two of randfunm, randfunm-diag, randfunm-action, mc, cg, dense-oracle")
        ->delimiter(',')
        ->required();
    compare->add_option("--reference", c.reference, "method used as the reference");
    compare->add_option("--top-fraction", c.top_fraction, "share of top reference nodes for the correlation");
    add_input_flags(*compare, c);
    add_estimator_flags(*compare, c, raw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!replay.empty()) {
            if (app.get_subcommands().size() > 0) throw ArgumentError("--replay takes no subcommand");
            std::ifstream in(replay);
            if (!in) throw ArgumentError("cannot open '" + replay + "'");
            auto config = read_config(in);
            config.output = replay_output;
            config.json_output = replay_json;
            return run_config(config, out, err);
        }
        if (app.get_subcommands().empty()) {
            err << app.help();
            return 1;
        }
        c.command = app.get_subcommands().front()->get_name();
        if (c.command != "generate") apply_raw(c, raw);
        if (c.measure == "total-communicability") c.measure = "total-comm";
        return run_config(c, out, err);
    } catch (const Error& e) {
        err << "error[" << kind_name(e.kind()) << "]: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::bad_alloc&) {
        err << "error[resource]: out of memory\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error[usage]: " << e.what() << "\n";
        return 1;
    }
}

} // namespace randfunm::cli
