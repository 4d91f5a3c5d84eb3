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

#include <array>
#include <cstdint>
#include <random>

namespace randfunm {

// Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011.
struct Philox4x32 {
    using counter_type = std::array<std::uint32_t, 4>;
    using key_type = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static constexpr counter_type round(const counter_type& c, const key_type& k)
    {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }

    /// Ten-round bijection of the counter under the key.
    static constexpr counter_type block(counter_type c, key_type k)
    {
        for (int r = 0; r < 10; ++r) {
            if (r > 0) {
                k[0] += kWeyl0;
                k[1] += kWeyl1;
            }
            c = round(c, k);
        }
        return c;
    }
};

/// Maps 64 random bits to a double in [0, 1) with 53 bits of resolution.
constexpr double to_unit_interval(std::uint64_t bits) noexcept
{
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

//---------------------------------------------------------------------------//
/*!
 * \brief Counter-based stream addressed by (seed, stream, substream).
 *
 * The walk engine keys one stream per (starting column, walk index), so the
 * numbers a walk sees never depend on which worker runs it or on how long
 * the other walks were.
 */
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          counter_{0u, substream, static_cast<std::uint32_t>(stream),
                   static_cast<std::uint32_t>(stream >> 32)}
    {
    }

    double uniform() noexcept
    {
        if (used_ == 2) refill();
        const auto hi = static_cast<std::uint64_t>(buffer_[2 * used_]);
        const auto lo = static_cast<std::uint64_t>(buffer_[2 * used_ + 1]);
        ++used_;
        return to_unit_interval((hi << 32) | lo);
    }

private:
    void refill() noexcept
    {
        buffer_ = Philox4x32::block(counter_, key_);
        ++counter_[0];
        used_ = 0;
    }

    Philox4x32::key_type key_;
    Philox4x32::counter_type counter_;
    Philox4x32::counter_type buffer_{};
    int used_ = 2;
};

/// Sequential generator for single-threaded work such as graph generation.
class SequentialRng {
public:
    explicit SequentialRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return to_unit_interval(engine_()); }

    /// Uniform integer in [0, bound), bound > 0, by rejection.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        for (;;) {
            const auto x = engine_();
            if (x < limit) return x % bound;
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace randfunm
