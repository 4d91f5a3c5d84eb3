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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace randfunm {

/// Power series f(x) = sum_k coeff_k x^k with the scaling gamma already
/// folded into the matrix.
enum class FunctionTag {
    exponential,  // coeff_k = 1/k!
    resolvent,    // coeff_k = 1, i.e. (I - A)^{-1}
};

inline FunctionTag parse_function_tag(std::string_view name)
{
    if (name == "exponential" || name == "exp") return FunctionTag::exponential;
    if (name == "resolvent" || name == "inverse") return FunctionTag::resolvent;
    throw ArgumentError("unknown matrix function '" + std::string(name) + "'");
}

inline std::string to_string(FunctionTag tag)
{
    switch (tag) {
    case FunctionTag::exponential: return "exponential";
    case FunctionTag::resolvent: return "resolvent";
    }
    throw ArgumentError("unknown matrix function tag");
}

/// coeff_{k+1} / coeff_k
inline double coeff_ratio(FunctionTag tag, std::size_t k)
{
    switch (tag) {
    case FunctionTag::exponential: return 1.0 / static_cast<double>(k + 1);
    case FunctionTag::resolvent: return 1.0;
    }
    throw ArgumentError("unknown matrix function tag");
}

/// Incremental coefficient generator. Copies are independent, so concurrent
/// readers each hold their own.
class CoefficientStream {
public:
    explicit CoefficientStream(FunctionTag tag) : tag_(tag)
    {
        coeff_ratio(tag, 0);  // validates the tag
    }

    FunctionTag tag() const noexcept { return tag_; }
    std::size_t index() const noexcept { return k_; }
    double value() const noexcept { return value_; }

    void advance()
    {
        value_ *= coeff_ratio(tag_, k_);
        ++k_;
    }

    void restart() noexcept
    {
        k_ = 0;
        value_ = 1.0;
    }

private:
    FunctionTag tag_;
    std::size_t k_ = 0;
    double value_ = 1.0;
};

/// coeff_k by the recurrence coeff_k = coeff_{k-1} * ratio; the exponential
/// underflows to zero instead of overflowing a factorial.
inline double coeff(FunctionTag tag, std::size_t k)
{
    CoefficientStream s(tag);
    while (s.index() < k) s.advance();
    return s.value();
}

/// coeff_{offset}, ..., coeff_{offset + count - 1}
inline std::vector<double> coeff_table(FunctionTag tag, std::size_t offset, std::size_t count)
{
    CoefficientStream s(tag);
    while (s.index() < offset) s.advance();
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i, s.advance()) out.push_back(s.value());
    return out;
}

} // namespace randfunm
