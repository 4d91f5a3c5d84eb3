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
#include "randfunm/series.hpp"
#include "randfunm/sparse_matrix.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace randfunm {

struct DenseMatrix {
    index_t n = 0;
    std::vector<double> values;  // row-major

    DenseMatrix() = default;
    explicit DenseMatrix(index_t size)
        : n(size), values(static_cast<std::size_t>(size * size), 0.0)
    {
    }

    static DenseMatrix identity(index_t size)
    {
        DenseMatrix m(size);
        for (index_t i = 0; i < size; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(index_t i, index_t j) { return values[static_cast<std::size_t>(i * n + j)]; }
    double operator()(index_t i, index_t j) const { return values[static_cast<std::size_t>(i * n + j)]; }

    std::vector<double> diagonal() const
    {
        std::vector<double> d(static_cast<std::size_t>(n));
        for (index_t i = 0; i < n; ++i) d[i] = (*this)(i, i);
        return d;
    }

    DenseMatrix operator*(const DenseMatrix& o) const
    {
        DenseMatrix out(n);
        for (index_t i = 0; i < n; ++i)
            for (index_t k = 0; k < n; ++k) {
                const double x = (*this)(i, k);
                if (x == 0.0) continue;
                for (index_t j = 0; j < n; ++j) out(i, j) += x * o(k, j);
            }
        return out;
    }
};

/// Truncated series with a bound on the neglected tail in the infinity norm
/// (infinite when the bound does not apply).
template <class Value>
struct SeriesSum {
    Value value;
    double tail_bound = std::numeric_limits<double>::infinity();
};

inline constexpr index_t kDenseOracleLimit = 2048;
inline constexpr std::size_t kDefaultOracleTerms = 64;

namespace detail {

inline double series_tail_bound(const SparseMatrix& a, FunctionTag tag, std::size_t terms)
{
    const double norm = max_abs_row_sum(a);
    if (norm == 0.0) return 0.0;
    const double ratio = coeff_ratio(tag, terms + 1) * norm;
    if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
    return coeff(tag, terms + 1) * std::pow(norm, static_cast<double>(terms + 1)) / (1.0 - ratio);
}

} // namespace detail

/// sum_{k=0}^{terms} coeff_k A^k by repeated products; each term is formed as
/// the previous one times A times coeff_{k}/coeff_{k-1}.
inline SeriesSum<DenseMatrix> dense_funm(const SparseMatrix& a, FunctionTag tag,
                                         std::size_t terms = kDefaultOracleTerms)
{
    const auto n = a.size();
    if (n > kDenseOracleLimit)
        throw ResourceError("dense oracle limited to n <= " + std::to_string(kDenseOracleLimit) +
                            ", got n = " + std::to_string(n));
    auto sum = DenseMatrix::identity(n);
    auto term = DenseMatrix::identity(n);
    const auto& cols = a.col_indices();
    const auto& vals = a.row_major_values();
    for (std::size_t k = 1; k <= terms; ++k) {
        const double ratio = coeff_ratio(tag, k - 1);
        DenseMatrix next(n);
        for (index_t r = 0; r < n; ++r)
            for (index_t j = 0; j < n; ++j) {
                const double t = term(r, j);
                if (t == 0.0) continue;
                for (index_t p = a.row_begin(j); p < a.row_end(j); ++p) next(r, cols[p]) += t * vals[p];
            }
        for (auto& x : next.values) x *= ratio;
        for (std::size_t e = 0; e < sum.values.size(); ++e) sum.values[e] += next.values[e];
        term = std::move(next);
    }
    return {std::move(sum), detail::series_tail_bound(a, tag, terms)};
}

/// sum_{k=0}^{terms} coeff_k A^k v
inline SeriesSum<std::vector<double>> series_action(const SparseMatrix& a, FunctionTag tag,
                                                    std::span<const double> v,
                                                    std::size_t terms = kDefaultOracleTerms)
{
    if (static_cast<index_t>(v.size()) != a.size()) throw ArgumentError("vector length does not match matrix");
    std::vector<double> sum(v.begin(), v.end());
    std::vector<double> term(v.begin(), v.end());
    for (std::size_t k = 1; k <= terms; ++k) {
        term = a.multiply(term);
        const double ratio = coeff_ratio(tag, k - 1);
        for (std::size_t i = 0; i < term.size(); ++i) {
            term[i] *= ratio;
            sum[i] += term[i];
        }
    }
    return {std::move(sum), detail::series_tail_bound(a, tag, terms)};
}

struct CgResult {
    std::vector<double> x;
    int iterations = 0;
    double residual_norm = 0.0;  // ||b - (I - gamma A) x||_2
};

/// Unpreconditioned conjugate gradients on (I - gamma A) x = b. Stops once
/// ||r||_2 <= tol ||b||_2.
inline CgResult cg_solve(const SparseMatrix& a, double gamma, std::span<const double> b, double tol,
                         int max_iter)
{
    const auto n = a.size();
    if (static_cast<index_t>(b.size()) != n) throw ArgumentError("right-hand side length does not match matrix");
    if (!(gamma >= 0.0)) throw ArgumentError("gamma must be non-negative");
    if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");

    auto apply = [&](const std::vector<double>& x) {
        auto y = a.multiply(x);
        for (index_t i = 0; i < n; ++i) y[i] = x[i] - gamma * y[i];
        return y;
    };
    auto dot = [](const std::vector<double>& u, const std::vector<double>& w) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * w[i];
        return s;
    };

    CgResult out;
    out.x.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<double> r(b.begin(), b.end());
    const double b_norm = std::sqrt(dot(r, r));
    if (b_norm == 0.0) return out;
    auto p = r;
    double rr = dot(r, r);
    while (std::sqrt(rr) > tol * b_norm) {
        if (out.iterations >= max_iter) {
            out.residual_norm = std::sqrt(rr);
            throw ConvergenceError("conjugate gradients did not converge in " + std::to_string(max_iter) +
                                       " iterations (residual " + std::to_string(out.residual_norm) + ")",
                                   out.residual_norm);
        }
        const auto ap = apply(p);
        const double pap = dot(p, ap);
        if (!(pap > 0.0))
            throw ConvergenceError("system matrix is not positive definite", std::sqrt(rr));
        const double alpha = rr / pap;
        for (index_t i = 0; i < n; ++i) {
            out.x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        const double rr_next = dot(r, r);
        const double beta = rr_next / rr;
        rr = rr_next;
        for (index_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        ++out.iterations;
    }
    auto check = apply(out.x);
    for (index_t i = 0; i < n; ++i) check[i] = b[i] - check[i];
    out.residual_norm = std::sqrt(dot(check, check));
    return out;
}

/// fraction / max_i sum_k |a_ik|, which keeps rho(gamma A) <= fraction.
inline double gershgorin_gamma(const SparseMatrix& a, double fraction)
{
    if (!(fraction > 0.0 && fraction < 1.0)) throw ArgumentError("Gershgorin fraction must lie in (0, 1)");
    const double m = max_abs_row_sum(a);
    if (m == 0.0) throw ArgumentError("Gershgorin bound undefined for a zero matrix");
    return fraction / m;
}

} // namespace randfunm
