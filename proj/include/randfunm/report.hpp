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

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace randfunm {

inline constexpr const char* kVersion = "0.1.0";

/// Everything needed to replay a run. Written into every artifact.
struct RunConfig {
    std::string command = "compute";
    std::string measure = "subgraph";

    // Input: a file, or a generator call such as {"smallworld", "n=64", "k=4"}.
    std::string input;
    std::string format = "auto";
    bool directed = false;
    bool symmetrize = false;
    bool keep_loops = false;
    bool keep_duplicates = false;
    bool keep_isolated = false;
    std::vector<std::string> generate;

    std::optional<double> gamma;
    std::optional<double> fraction;
    std::string method = "randomized";
    std::vector<std::string> methods;
    std::string reference = "dense-oracle";
    std::string budget = "global";
    double top_fraction = 0.01;
    double cg_tolerance = 1e-10;
    int cg_max_iterations = 10'000;

    std::uint64_t samples = 1'000'000;
    double cutoff = 1e-6;
    std::int64_t max_steps = 10'000;
    std::uint64_t seed = 42;
    unsigned threads = 1;
    std::string mode = "deterministic";
    std::int64_t block_rows = 1024;

    std::string sweep = "samples";
    std::vector<double> sweep_values;
    std::uint64_t reference_samples = 0;

    std::string output;
    std::string json_output;
};

inline void to_json(nlohmann::json& j, const RunConfig& c)
{
    j = nlohmann::json{
        {"command", c.command},
        {"measure", c.measure},
        {"input", c.input},
        {"format", c.format},
        {"directed", c.directed},
        {"symmetrize", c.symmetrize},
        {"keep_loops", c.keep_loops},
        {"keep_duplicates", c.keep_duplicates},
        {"keep_isolated", c.keep_isolated},
        {"generate", c.generate},
        {"gamma", c.gamma ? nlohmann::json(*c.gamma) : nlohmann::json(nullptr)},
        {"fraction", c.fraction ? nlohmann::json(*c.fraction) : nlohmann::json(nullptr)},
        {"method", c.method},
        {"methods", c.methods},
        {"reference", c.reference},
        {"budget", c.budget},
        {"top_fraction", c.top_fraction},
        {"cg_tolerance", c.cg_tolerance},
        {"cg_max_iterations", c.cg_max_iterations},
        {"samples", c.samples},
        {"cutoff", c.cutoff},
        {"max_steps", c.max_steps},
        {"seed", c.seed},
        {"threads", c.threads},
        {"mode", c.mode},
        {"block_rows", c.block_rows},
        {"sweep", c.sweep},
        {"sweep_values", c.sweep_values},
        {"reference_samples", c.reference_samples},
        {"output", c.output},
        {"json_output", c.json_output},
    };
}

inline void from_json(const nlohmann::json& j, RunConfig& c)
{
    RunConfig d;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) j.at(key).get_to(field);
    };
    get("command", d.command);
    get("measure", d.measure);
    get("input", d.input);
    get("format", d.format);
    get("directed", d.directed);
    get("symmetrize", d.symmetrize);
    get("keep_loops", d.keep_loops);
    get("keep_duplicates", d.keep_duplicates);
    get("keep_isolated", d.keep_isolated);
    get("generate", d.generate);
    if (j.contains("gamma") && !j.at("gamma").is_null()) d.gamma = j.at("gamma").get<double>();
    if (j.contains("fraction") && !j.at("fraction").is_null()) d.fraction = j.at("fraction").get<double>();
    get("method", d.method);
    get("methods", d.methods);
    get("reference", d.reference);
    get("budget", d.budget);
    get("top_fraction", d.top_fraction);
    get("cg_tolerance", d.cg_tolerance);
    get("cg_max_iterations", d.cg_max_iterations);
    get("samples", d.samples);
    get("cutoff", d.cutoff);
    get("max_steps", d.max_steps);
    get("seed", d.seed);
    get("threads", d.threads);
    get("mode", d.mode);
    get("block_rows", d.block_rows);
    get("sweep", d.sweep);
    get("sweep_values", d.sweep_values);
    get("reference_samples", d.reference_samples);
    get("output", d.output);
    get("json_output", d.json_output);
    c = std::move(d);
}

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double x)
{
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

/// For a symmetrised digraph of 2n rows, which half a row belongs to.
inline const char* block_label(index_t row, index_t n_rows)
{
    return row < n_rows / 2 ? "out" : "in";
}

//---------------------------------------------------------------------------//
/*!
 * \brief Writes `node_id,score,rank` rows in matrix row order.
 *
 * Two comment lines carry the library version and the run configuration.
 * When `blocks` is set a fourth column marks the out/in half of a
 * symmetrised directed graph; node ids then repeat across the halves.
 */
inline void write_csv(std::ostream& out, const CentralityReport& report, const RunConfig& config,
                      bool blocks = false)
{
    out << "# randfunm " << kVersion << "\n";
    out << "# config " << nlohmann::json(config).dump() << "\n";
    out << (blocks ? "node_id,score,rank,block\n" : "node_id,score,rank\n");
    std::vector<index_t> rank(report.scores.size());
    for (std::size_t r = 0; r < report.ranking.size(); ++r) rank[report.ranking[r]] = static_cast<index_t>(r + 1);
    for (index_t i = 0; i < report.size(); ++i) {
        out << report.node_ids[i] << ',' << format_double(report.scores[i]) << ',' << rank[i];
        if (blocks) out << ',' << block_label(i, report.size());
        out << '\n';
    }
}

inline nlohmann::json stats_json(const WalkStats& s)
{
    return {{"walks", s.walks},
            {"emissions", s.emissions},
            {"truncations", s.truncations},
            {"mean_steps", s.mean_steps()}};
}

/// Full report: configuration, version, graph size, walk statistics and
/// per-node scores with rank and standard error.
inline nlohmann::json report_json(const CentralityReport& report, const RunConfig& config, index_t nnz,
                                  bool blocks = false)
{
    nlohmann::json nodes = nlohmann::json::array();
    std::vector<index_t> rank(report.scores.size());
    for (std::size_t r = 0; r < report.ranking.size(); ++r) rank[report.ranking[r]] = static_cast<index_t>(r + 1);
    for (index_t i = 0; i < report.size(); ++i) {
        nlohmann::json node{{"id", report.node_ids[i]}, {"score", report.scores[i]}, {"rank", rank[i]}};
        if (!report.std_error.empty()) node["std_error"] = report.std_error[i];
        if (blocks) node["block"] = block_label(i, report.size());
        nodes.push_back(std::move(node));
    }
    nlohmann::json j{
        {"version", kVersion},
        {"config", config},
        {"measure", to_string(report.measure)},
        {"method", report.method},
        {"gamma", report.gamma},
        {"n", report.size()},
        {"nnz", nnz},
        {"stats", stats_json(report.stats)},
        {"nodes", std::move(nodes)},
    };
    if (report.measure == Measure::subgraph) j["estrada_index"] = estrada_index(report);
    return j;
}

/// Reads the configuration back from a JSON report or a CSV artifact.
inline RunConfig read_config(std::istream& in)
{
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty artifact", 1);
    try {
        if (text[first] == '{') {
            const auto j = nlohmann::json::parse(text);
            return (j.contains("config") ? j.at("config") : j).get<RunConfig>();
        }
        std::size_t pos = 0;
        std::size_t line = 1;
        while (pos < text.size()) {
            auto end = text.find('\n', pos);
            if (end == std::string::npos) end = text.size();
            const std::string_view l(text.data() + pos, end - pos);
            if (l.starts_with("# config ")) return nlohmann::json::parse(l.substr(9)).get<RunConfig>();
            if (!l.starts_with("#")) break;
            pos = end + 1;
            ++line;
        }
        throw ParseError("no embedded configuration", line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad configuration: ") + e.what(), 1);
    }
}

} // namespace randfunm
