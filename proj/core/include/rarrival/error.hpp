/*
 * Copyright 2026 The rarrival Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RARRIVAL_ERROR_HPP
#define RARRIVAL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rarrival {

/// Malformed textual input (instance, circuit, flow JSON, bit strings).
class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// Something that the theory guarantees did not hold. Always a bug.
class InternalInvariantError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

}

#endif
