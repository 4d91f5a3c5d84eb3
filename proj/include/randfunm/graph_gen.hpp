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
#include "randfunm/graph_io.hpp"
#include "randfunm/rng.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace randfunm {

struct SmallWorldParams {
    index_t n = 1024;
    index_t k = 10;  // ring neighbours per node, even
    double rewire_prob = 0.1;
    std::uint64_t seed = 1;
};

struct KroneckerParams {
    int scale = 10;
    index_t edge_factor = 16;
    double pa = 0.57;
    double pb = 0.19;
    double pc = 0.19;
    std::uint64_t seed = 1;

    double pd() const noexcept { return 1.0 - pa - pb - pc; }
};

//---------------------------------------------------------------------------//
/*!
 * \brief Watts-Strogatz graph.
 *
 * Starts from the ring lattice where node i is joined to the k/2 nodes on
 * each side. Lattice edges are visited by ring distance, then by node; each
 * edge (i, j) is replaced with probability rewire_prob by (i, m), m drawn
 * uniformly from the nodes that are neither i nor already adjacent to i.
 * The edge count is preserved, so the mean degree is exactly k.
 */
inline Graph gen_smallworld(const SmallWorldParams& p)
{
    if (p.k < 2 || p.k % 2 != 0) throw ArgumentError("small-world k must be even and at least 2");
    if (p.k >= p.n) throw ArgumentError("small-world k must be smaller than n");
    if (!(p.rewire_prob >= 0.0 && p.rewire_prob <= 1.0))
        throw ArgumentError("rewire probability must lie in [0, 1]");

    const auto n = p.n;
    const auto half = p.k / 2;
    std::vector<std::vector<index_t>> adj(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) {
        for (index_t d = 1; d <= half; ++d) {
            adj[i].push_back((i + d) % n);
            adj[i].push_back((i - d + n) % n);
        }
    }
    auto connected = [&](index_t a, index_t b) {
        return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
    };
    auto erase = [&](index_t a, index_t b) {
        adj[a].erase(std::find(adj[a].begin(), adj[a].end(), b));
    };

    SequentialRng rng(p.seed);
    if (p.rewire_prob > 0.0) {
        for (index_t d = 1; d <= half; ++d) {
            for (index_t i = 0; i < n; ++i) {
                if (!(rng.uniform() < p.rewire_prob)) continue;
                if (static_cast<index_t>(adj[i].size()) >= n - 1) continue;
                const auto j = (i + d) % n;
                index_t m;
                do {
                    m = static_cast<index_t>(rng.below(static_cast<std::uint64_t>(n)));
                } while (m == i || connected(i, m));
                erase(i, j);
                erase(j, i);
                adj[i].push_back(m);
                adj[m].push_back(i);
            }
        }
    }

    std::vector<RawEdge> edges;
    edges.reserve(static_cast<std::size_t>(n * half));
    for (index_t i = 0; i < n; ++i)
        for (auto j : adj[i])
            if (i < j) edges.push_back({i, j, 1.0});
    GraphFilters keep_all{true, true, false};
    return assemble_graph(n, std::move(edges), false, keep_all);
}

/// R-MAT edge sampling: edge_factor * 2^scale directed draws, each settled by
/// `scale` quadrant choices. The result is symmetrised, deduplicated, and
/// stripped of loops and isolated nodes.
inline Graph gen_kronecker(const KroneckerParams& p)
{
    if (p.scale < 1 || p.scale > 40) throw ArgumentError("kronecker scale must lie in [1, 40]");
    if (p.edge_factor < 1) throw ArgumentError("kronecker edge factor must be positive");
    if (p.pa < 0.0 || p.pb < 0.0 || p.pc < 0.0 || p.pa + p.pb + p.pc > 1.0 + 1e-12)
        throw ArgumentError("kronecker quadrant probabilities must be non-negative with sum <= 1");

    const index_t n = index_t{1} << p.scale;
    const index_t draws = p.edge_factor * n;
    const double ab = p.pa + p.pb;
    const double abc = ab + p.pc;

    SequentialRng rng(p.seed);
    std::vector<RawEdge> edges;
    edges.reserve(static_cast<std::size_t>(draws));
    for (index_t e = 0; e < draws; ++e) {
        index_t u = 0, v = 0;
        for (int level = 0; level < p.scale; ++level) {
            const double r = rng.uniform();
            const index_t bit = index_t{1} << (p.scale - 1 - level);
            if (r < p.pa) {
            } else if (r < ab) {
                v |= bit;
            } else if (r < abc) {
                u |= bit;
            } else {
                u |= bit;
                v |= bit;
            }
        }
        edges.push_back({u, v, 1.0});
    }
    return assemble_graph(n, std::move(edges), false, GraphFilters{true, true, true});
}

} // namespace randfunm
