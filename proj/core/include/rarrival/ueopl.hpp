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

#ifndef RARRIVAL_UEOPL_HPP
#define RARRIVAL_UEOPL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rarrival/flow.hpp"

namespace rarrival {

using Bits = std::vector<bool>;

/// Fixed-width encoding of F^N: w = ceil(log2(N + 1)) bits per coordinate, canonical order, MSB first.
class FlowEncoding
{
public:
    FlowEncoding(const Instance& instance, const FlowBounds& bounds);

    [[nodiscard]] std::size_t coordinate_width() const noexcept { return width_; }
    [[nodiscard]] std::size_t size() const noexcept { return width_ * dimension_; }

    /// Throws ContractViolation if a coordinate does not fit in w bits.
    [[nodiscard]] Bits encode(const Flow& flow) const;
    /// Throws ContractViolation on the wrong width.
    [[nodiscard]] Flow decode(const Bits& bits) const;

private:
    const Instance* instance_;
    std::size_t width_ = 0;
    std::size_t dimension_ = 0;
};

/// S, P and V restricted to F^N. Points with a coordinate above N are isolated.
class Ueopl
{
public:
    Ueopl(const Instance& instance, const OverflowPolicy& policy);

    [[nodiscard]] const FlowEncoding& encoding() const noexcept { return encoding_; }
    [[nodiscard]] const FlowBounds& bounds() const noexcept { return bounds_; }

    [[nodiscard]] Bits successor(const Bits& x) const;
    [[nodiscard]] Bits predecessor(const Bits& x) const;
    [[nodiscard]] std::uint64_t potential(const Bits& x) const;

private:
    [[nodiscard]] bool in_domain(const Flow& flow) const;

    const Instance* instance_;
    FlowBounds bounds_;
    FlowEncoding encoding_;
};

/// Big-endian hex of the bit string, left-padded to a whole number of digits.
std::string to_hex(const Bits& bits);
/// Inverse of to_hex for a known width; an optional "0x" prefix is accepted. Throws ParseError.
Bits from_hex(std::string_view hex, std::size_t width);

}

#endif
