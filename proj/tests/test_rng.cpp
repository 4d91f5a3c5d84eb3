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

#include "randfunm/rng.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace randfunm;

TEST(Philox, KnownAnswers)
{
    using C = Philox4x32::counter_type;
    using K = Philox4x32::key_type;
    EXPECT_EQ(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::block(C{~0u, ~0u, ~0u, ~0u}, K{~0u, ~0u}),
              (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::block(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}),
              (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, UnitInterval)
{
    EXPECT_EQ(to_unit_interval(0), 0.0);
    EXPECT_LT(to_unit_interval(~std::uint64_t{0}), 1.0);
}

TEST(StreamRng, SameStreamRepeats)
{
    StreamRng a(7, 3, 11), b(7, 3, 11);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(StreamRng, StreamsDiffer)
{
    std::set<double> first;
    for (std::uint64_t s = 0; s < 64; ++s)
        for (std::uint32_t sub = 0; sub < 4; ++sub) first.insert(StreamRng(1, s, sub).uniform());
    first.insert(StreamRng(2, 0, 0).uniform());
    first.insert(StreamRng(1, std::uint64_t{1} << 63, 0).uniform());
    EXPECT_EQ(first.size(), 64u * 4u + 2u);
}

TEST(StreamRng, MomentsLookUniform)
{
    StreamRng r(42, 0, 0);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sq += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.005);
    EXPECT_NEAR(sq / n - (sum / n) * (sum / n), 1.0 / 12.0, 0.002);
}

TEST(SequentialRng, BelowStaysInRange)
{
    SequentialRng r(5);
    std::vector<int> hits(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const auto x = r.below(7);
        ASSERT_LT(x, 7u);
        ++hits[x];
    }
    for (int h : hits) EXPECT_GT(h, 800);
}
