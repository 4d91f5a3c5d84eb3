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
#include "randfunm/sparse_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace randfunm {

enum class GraphFormat { edge_list, matrix_market };

struct GraphFilters {
    bool drop_loops = true;
    bool drop_duplicates = true;
    bool drop_isolated = true;
};

struct GraphSource {
    GraphFormat format = GraphFormat::edge_list;
    std::filesystem::path path;
    bool directed = false;
    GraphFilters filters;
};

/// A matrix together with the node ids it was built from. original_ids[r]
/// is the id, as written in the input, of matrix row r.
struct Graph {
    SparseMatrix matrix;
    std::vector<index_t> original_ids;
    bool directed = false;

    index_t size() const noexcept { return matrix.size(); }

    /// Edge count as an undirected graph would report it: each symmetric pair
    /// counts once. Equals nnz for directed graphs.
    index_t edge_count() const
    {
        if (directed) return matrix.nnz();
        index_t loops = 0;
        for (index_t i = 0; i < matrix.size(); ++i)
            if (matrix.at(i, i) != 0.0) ++loops;
        return (matrix.nnz() - loops) / 2 + loops;
    }
};

struct RawEdge {
    index_t u;
    index_t v;
    double value;
};

/// Applies the filters and compaction shared by all loaders and generators.
/// node_count is the id range [0, node_count) before compaction.
inline Graph assemble_graph(index_t node_count, std::vector<RawEdge> edges, bool directed,
                            const GraphFilters& filters)
{
    std::vector<Triplet> entries;
    entries.reserve(edges.size() * (directed ? 1 : 2));
    for (const auto& e : edges) {
        if (e.u == e.v) {
            if (!filters.drop_loops) entries.push_back({e.u, e.v, e.value});
            continue;
        }
        entries.push_back({e.u, e.v, e.value});
        if (!directed) entries.push_back({e.v, e.u, e.value});
    }
    if (filters.drop_duplicates) {
        std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        entries.erase(std::unique(entries.begin(), entries.end(),
                                  [](const Triplet& a, const Triplet& b) {
                                      return a.row == b.row && a.col == b.col;
                                  }),
                      entries.end());
    }
    if (entries.empty()) throw DegenerateInputError("graph has no edges after filtering");

    Graph g;
    g.directed = directed;
    if (filters.drop_isolated) {
        std::vector<index_t> ids;
        ids.reserve(entries.size() * 2);
        for (const auto& t : entries) {
            ids.push_back(t.row);
            ids.push_back(t.col);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        for (auto& t : entries) {
            t.row = std::lower_bound(ids.begin(), ids.end(), t.row) - ids.begin();
            t.col = std::lower_bound(ids.begin(), ids.end(), t.col) - ids.begin();
        }
        g.original_ids = std::move(ids);
    } else {
        g.original_ids.resize(static_cast<std::size_t>(node_count));
        for (index_t i = 0; i < node_count; ++i) g.original_ids[i] = i;
    }
    const auto n = static_cast<index_t>(g.original_ids.size());
    g.matrix = SparseMatrix::from_triplets(n, std::move(entries), false);
    if (g.matrix.nnz() == 0) throw DegenerateInputError("graph has no edges after filtering");
    if (!directed && g.matrix.is_symmetric())
        g.matrix = SparseMatrix::from_triplets(n, g.matrix.triplets(), true);
    return g;
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t p = 0;
    while (p < s.size()) {
        while (p < s.size() && (s[p] == ' ' || s[p] == '\t' || s[p] == '\r')) ++p;
        const auto b = p;
        while (p < s.size() && s[p] != ' ' && s[p] != '\t' && s[p] != '\r') ++p;
        if (p > b) out.push_back(s.substr(b, p - b));
    }
    return out;
}

template <class T>
std::optional<T> parse_number(std::string_view token)
{
    T value{};
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

inline std::string lowercase(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace detail

/// Whitespace separated "u v" pairs; lines starting with '#' or '%' are
/// comments. Columns after the second are ignored.
inline Graph parse_edge_list(std::istream& in, bool directed, const GraphFilters& filters = {})
{
    std::vector<RawEdge> edges;
    index_t max_id = -1;
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == '#' || body.front() == '%') continue;
        const auto tokens = detail::split_ws(body);
        if (tokens.size() < 2) throw ParseError("expected two node ids", line_no);
        const auto u = detail::parse_number<index_t>(tokens[0]);
        const auto v = detail::parse_number<index_t>(tokens[1]);
        if (!u || !v) throw ParseError("malformed node id", line_no);
        if (*u < 0 || *v < 0) throw ParseError("negative node id", line_no);
        max_id = std::max({max_id, *u, *v});
        edges.push_back({*u, *v, 1.0});
    }
    if (edges.empty()) throw DegenerateInputError("edge list contains no edges");
    return assemble_graph(max_id + 1, std::move(edges), directed, filters);
}

/// Coordinate Matrix Market. "symmetric" storage, or directed == false, mirrors
/// every entry; "pattern" entries read as 1.
inline Graph parse_matrix_market(std::istream& in, bool directed, const GraphFilters& filters = {})
{
    std::string line;
    std::int64_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError("missing Matrix Market header", 1);
    ++line_no;
    const auto header = detail::split_ws(detail::trim(line));
    if (header.size() != 5 || detail::lowercase(header[0]) != "%%matrixmarket")
        throw ParseError("missing Matrix Market header", line_no);
    if (detail::lowercase(header[1]) != "matrix" || detail::lowercase(header[2]) != "coordinate")
        throw ParseError("only 'matrix coordinate' files are supported", line_no);
    const auto field = detail::lowercase(header[3]);
    const auto symmetry = detail::lowercase(header[4]);
    const bool pattern = field == "pattern";
    if (!pattern && field != "real" && field != "integer")
        throw ParseError("unsupported field '" + field + "'", line_no);
    if (symmetry != "general" && symmetry != "symmetric")
        throw ParseError("unsupported symmetry '" + symmetry + "'", line_no);
    const bool mirrored = symmetry == "symmetric" || !directed;

    index_t rows = -1, cols = -1, declared = -1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == '%') continue;
        const auto tokens = detail::split_ws(body);
        if (tokens.size() != 3) throw ParseError("expected 'rows cols entries'", line_no);
        const auto r = detail::parse_number<index_t>(tokens[0]);
        const auto c = detail::parse_number<index_t>(tokens[1]);
        const auto e = detail::parse_number<index_t>(tokens[2]);
        if (!r || !c || !e || *r < 0 || *c < 0 || *e < 0) throw ParseError("malformed size line", line_no);
        rows = *r;
        cols = *c;
        declared = *e;
        break;
    }
    if (declared < 0) throw ParseError("missing size line", line_no);

    std::vector<RawEdge> edges;
    edges.reserve(static_cast<std::size_t>(declared));
    while (static_cast<index_t>(edges.size()) < declared && std::getline(in, line)) {
        ++line_no;
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == '%') continue;
        const auto tokens = detail::split_ws(body);
        if (tokens.size() < (pattern ? 2u : 3u)) throw ParseError("truncated entry", line_no);
        const auto i = detail::parse_number<index_t>(tokens[0]);
        const auto j = detail::parse_number<index_t>(tokens[1]);
        if (!i || !j || *i < 1 || *j < 1 || *i > rows || *j > cols)
            throw ParseError("entry index out of range", line_no);
        double value = 1.0;
        if (!pattern) {
            const auto v = detail::parse_number<double>(tokens[2]);
            if (!v) throw ParseError("malformed value", line_no);
            value = *v;
        }
        edges.push_back({*i - 1, *j - 1, value});
    }
    if (static_cast<index_t>(edges.size()) < declared)
        throw ParseError("file ends before all " + std::to_string(declared) + " entries", line_no);
    if (edges.empty()) throw DegenerateInputError("matrix has no entries");
    return assemble_graph(std::max(rows, cols), std::move(edges), !mirrored, filters);
}

inline Graph load_graph(const GraphSource& source)
{
    std::ifstream in(source.path);
    if (!in) throw ArgumentError("cannot open '" + source.path.string() + "'");
    switch (source.format) {
    case GraphFormat::edge_list: return parse_edge_list(in, source.directed, source.filters);
    case GraphFormat::matrix_market: return parse_matrix_market(in, source.directed, source.filters);
    }
    throw ArgumentError("unknown graph format");
}

inline GraphFormat guess_format(const std::filesystem::path& path)
{
    const auto ext = detail::lowercase(path.extension().string());
    return ext == ".mtx" || ext == ".mm" ? GraphFormat::matrix_market : GraphFormat::edge_list;
}

/// Writes matrix row/column indices (not original ids) so the file reloads
/// into the same matrix. Undirected graphs list each pair once.
inline void write_edge_list(const Graph& g, std::ostream& out)
{
    out << "# nodes " << g.size() << " edges " << g.edge_count()
        << (g.directed ? " directed" : " undirected") << '\n';
    for (const auto& t : g.matrix.triplets()) {
        if (!g.directed && t.col < t.row) continue;
        out << t.row << ' ' << t.col << '\n';
    }
}

} // namespace randfunm
