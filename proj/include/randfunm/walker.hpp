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
#include "randfunm/rng.hpp"
#include "randfunm/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace randfunm {

/// Walk budget and termination controls.
struct WalkConfig {
    std::uint64_t samples = 1'000'000;  // N_s
    double cutoff = 1e-6;               // W_c, relative to the initial weight
    index_t max_steps = 10'000;         // hard cap on emissions per walk
    std::uint64_t seed = 42;

    void validate() const
    {
        if (samples < 1) throw ArgumentError("sample budget must be at least 1");
        if (!(cutoff > 0.0 && cutoff < 1.0)) throw ArgumentError("weight cutoff must lie in (0, 1)");
        if (max_steps < 1) throw ArgumentError("step cap must be at least 1");
    }
};

inline constexpr index_t kAbsorbed = -1;

//---------------------------------------------------------------------------//
/*!
 * \brief Markov chain over the rows of A.
 *
 * Transition probabilities are t_ij = |a_ij| / sum_k |a_ik|, stored as one
 * cumulative table per row aligned with the row-major index of A. The weight
 * factor a_ij / t_ij is kept per stored entry. Starting columns are drawn
 * with p_j proportional to the 2-norm of column j.
 */
class TransitionModel {
public:
    explicit TransitionModel(const SparseMatrix& a)
        : row_ptr_(a.row_ptr()), states_(a.col_indices()),
          cdf_(a.col_indices().size()), factor_(a.col_indices().size()),
          col_norms_(static_cast<std::size_t>(a.size()), 0.0),
          init_prob_(static_cast<std::size_t>(a.size()), 0.0),
          init_cdf_(static_cast<std::size_t>(a.size()), 0.0)
    {
        const auto n = a.size();
        const auto& vals = a.row_major_values();
        for (index_t i = 0; i < n; ++i) {
            const auto b = row_ptr_[i];
            const auto e = row_ptr_[i + 1];
            if (b == e) continue;
            double total = 0.0;
            for (auto p = b; p < e; ++p) total += std::abs(vals[p]);
            double running = 0.0;
            for (auto p = b; p < e; ++p) {
                running += std::abs(vals[p]);
                cdf_[p] = running / total;
                factor_[p] = std::copysign(total, vals[p]);
            }
            cdf_[e - 1] = 1.0;
        }

        double norm_total = 0.0;
        for (index_t j = 0; j < n; ++j) {
            double sq = 0.0;
            for (double v : a.col_values(j)) sq += v * v;
            col_norms_[j] = std::sqrt(sq);
            norm_total += col_norms_[j];
        }
        if (!(norm_total > 0.0))
            throw DegenerateInputError("all columns are zero; the initial distribution is undefined");
        double running = 0.0;
        for (index_t j = 0; j < n; ++j) {
            init_prob_[j] = col_norms_[j] / norm_total;
            running += col_norms_[j];
            init_cdf_[j] = running / norm_total;
        }
        for (index_t j = n - 1; j >= 0 && col_norms_[j] == 0.0; --j) init_cdf_[j] = 1.0;
        init_cdf_.back() = 1.0;
    }

    index_t size() const noexcept { return static_cast<index_t>(row_ptr_.size()) - 1; }
    bool absorbing(index_t i) const { return row_ptr_[i] == row_ptr_[i + 1]; }

    std::span<const double> row_cdf(index_t i) const
    {
        return {cdf_.data() + row_ptr_[i], static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
    }
    std::span<const index_t> row_states(index_t i) const
    {
        return {states_.data() + row_ptr_[i], static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
    }

    /// Position (in the row-major index) of the entry chosen by u in [0, 1),
    /// or kAbsorbed for an empty row.
    index_t sample_position(index_t i, double u) const
    {
        const auto b = row_ptr_[i];
        const auto e = row_ptr_[i + 1];
        if (b == e) return kAbsorbed;
        const auto it = std::upper_bound(cdf_.begin() + b, cdf_.begin() + e, u);
        return it == cdf_.begin() + e ? e - 1 : static_cast<index_t>(it - cdf_.begin());
    }

    index_t state_at(index_t position) const { return states_[position]; }
    double transition_probability(index_t position) const
    {
        const auto prev = position == 0 ? 0.0 : cdf_[position - 1];
        return is_row_start(position) ? cdf_[position] : cdf_[position] - prev;
    }
    /// a_ij / t_ij for the entry at position.
    double weight_factor(index_t position) const { return factor_[position]; }

    const std::vector<double>& col_norms() const noexcept { return col_norms_; }
    const std::vector<double>& initial_probabilities() const noexcept { return init_prob_; }
    const std::vector<double>& initial_cdf() const noexcept { return init_cdf_; }

    index_t sample_start(double u) const
    {
        const auto it = std::upper_bound(init_cdf_.begin(), init_cdf_.end(), u);
        return it == init_cdf_.end() ? size() - 1 : static_cast<index_t>(it - init_cdf_.begin());
    }

private:
    bool is_row_start(index_t position) const
    {
        const auto it = std::upper_bound(row_ptr_.begin(), row_ptr_.end(), position);
        return *(it - 1) == position;
    }

    std::vector<index_t> row_ptr_;
    std::vector<index_t> states_;
    std::vector<double> cdf_;
    std::vector<double> factor_;
    std::vector<double> col_norms_;
    std::vector<double> init_prob_;
    std::vector<double> init_cdf_;
};

inline TransitionModel build_transition_model(const SparseMatrix& a)
{
    if (a.size() == 0) throw DegenerateInputError("empty matrix");
    return TransitionModel(a);
}

/// Next state for uniform draw u, or kAbsorbed.
inline index_t step(const TransitionModel& model, index_t state, double u)
{
    const auto pos = model.sample_position(state, u);
    return pos == kAbsorbed ? kAbsorbed : model.state_at(pos);
}

template <class Rng>
index_t step(const TransitionModel& model, index_t state, Rng& rng)
{
    return step(model, state, rng.uniform());
}

//---------------------------------------------------------------------------//
/*!
 * \brief Splits `total` into integer parts proportional to `weights`.
 *
 * Each part gets floor(w_i / sum(w) * total); the remaining units go to the
 * largest fractional remainders, lower index first on ties. Zero weights
 * always get zero. The parts sum to `total` exactly.
 */
inline std::vector<std::uint64_t> allocate_budget(std::span<const double> weights, std::uint64_t total)
{
    std::vector<std::uint64_t> parts(weights.size(), 0);
    long double sum = 0.0L;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ArgumentError("budget weights must be finite and non-negative");
        sum += w;
    }
    if (total == 0 || weights.empty()) return parts;
    if (!(sum > 0.0L)) throw ArgumentError("budget weights sum to zero");

    std::vector<long double> remainder(weights.size(), 0.0L);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const long double exact = static_cast<long double>(weights[i]) / sum * static_cast<long double>(total);
        const auto whole = static_cast<std::uint64_t>(std::floor(exact));
        parts[i] = whole;
        remainder[i] = exact - static_cast<long double>(whole);
        assigned += whole;
    }
    // Rounding of the exact shares can overshoot by a unit at most.
    while (assigned > total) {
        std::size_t worst = weights.size();
        for (std::size_t i = 0; i < weights.size(); ++i)
            if (parts[i] > 0 && (worst == weights.size() || remainder[i] < remainder[worst])) worst = i;
        --parts[worst];
        remainder[worst] += 1.0L;
        --assigned;
    }

    std::vector<std::size_t> order;
    order.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (weights[i] > 0.0) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t r = 0; assigned < total; r = (r + 1) % order.size()) {
        ++parts[order[r]];
        ++assigned;
    }
    return parts;
}

/// N_i for every starting column, summing to `samples`.
inline std::vector<std::uint64_t> allocate_walks(const TransitionModel& model, std::uint64_t samples)
{
    return allocate_budget(model.col_norms(), samples);
}

struct WalkOutcome {
    index_t emissions = 0;
    bool truncated = false;
};

//---------------------------------------------------------------------------//
/*!
 * \brief Runs one walk from `start`.
 *
 * At step k, while |W^(k)| > cutoff * |W^(0)| and k < max_steps, calls
 * sink(k, state_k, coeffs[k] * W^(k)), draws the next state and multiplies
 * the weight by a/t of the chosen entry. The walk also ends on an absorbing
 * row. `coeffs` must hold at least max_steps entries; the caller decides the
 * offset (coeff_{k+2} for the row/column estimators, coeff_k for the
 * classical one). Hitting the cap, or a weight overflowing, reports a
 * truncation.
 */
template <class Rng, class Sink>
WalkOutcome run_walk(const TransitionModel& model, std::span<const double> coeffs, index_t start,
                     double initial_weight, const WalkConfig& config, Rng& rng, Sink&& sink)
{
    const double threshold = config.cutoff * std::abs(initial_weight);
    index_t state = start;
    double weight = initial_weight;
    index_t k = 0;
    for (;;) {
        if (!(std::abs(weight) > threshold)) return {k, false};
        if (k >= config.max_steps || !std::isfinite(weight)) return {k, true};
        sink(k, state, coeffs[static_cast<std::size_t>(k)] * weight);
        ++k;
        const auto pos = model.sample_position(state, rng.uniform());
        if (pos == kAbsorbed) return {k, false};
        weight *= model.weight_factor(pos);
        state = model.state_at(pos);
    }
}

/// max_i (sum_j |a_ij|)^2. The resolvent series needs this below 1 for a
/// bounded estimator variance; the exponential accepts any value.
inline double alpha_diagnostic(const SparseMatrix& a)
{
    const double m = max_abs_row_sum(a);
    return m * m;
}

} // namespace randfunm
