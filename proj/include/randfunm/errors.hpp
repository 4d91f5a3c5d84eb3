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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace randfunm {

using index_t = std::int64_t;

/// Base of every error raised by the library. The kind decides the CLI exit
/// status.
class Error : public std::runtime_error {
public:
    enum class Kind { argument, data, numerical, resource };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& what) : Error(Kind::argument, what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::int64_t line)
        : Error(Kind::data, "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::int64_t line() const noexcept { return line_; }

private:
    std::int64_t line_;
};

class DegenerateInputError : public Error {
public:
    explicit DegenerateInputError(const std::string& what) : Error(Kind::data, what) {}
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(Kind::numerical, what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(Kind::resource, what) {}
};

} // namespace randfunm
