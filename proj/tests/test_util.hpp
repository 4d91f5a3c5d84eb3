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

#include "randfunm/sparse_matrix.hpp"

#include <vector>

namespace randfunm::testing {

inline SparseMatrix undirected(index_t n, std::initializer_list<std::pair<index_t, index_t>> edges,
                               double weight = 1.0)
{
    std::vector<Triplet> t;
    for (auto [u, v] : edges) {
        t.push_back({u, v, weight});
        if (u != v) t.push_back({v, u, weight});
    }
    return SparseMatrix::from_triplets(n, t);
}

inline SparseMatrix path2(double gamma = 1.0) { return undirected(2, {{0, 1}}, gamma); }

inline SparseMatrix cycle(index_t n, double gamma = 1.0)
{
    std::vector<Triplet> t;
    for (index_t i = 0; i < n; ++i) {
        t.push_back({i, (i + 1) % n, gamma});
        t.push_back({(i + 1) % n, i, gamma});
    }
    return SparseMatrix::from_triplets(n, t);
}

/// K_{1,3} with hub 0.
inline SparseMatrix star3(double gamma = 1.0) { return undirected(4, {{0, 1}, {0, 2}, {0, 3}}, gamma); }

inline SparseMatrix path(index_t n, double gamma = 1.0)
{
    std::vector<Triplet> t;
    for (index_t i = 0; i + 1 < n; ++i) {
        t.push_back({i, i + 1, gamma});
        t.push_back({i + 1, i, gamma});
    }
    return SparseMatrix::from_triplets(n, t);
}

} // namespace randfunm::testing
