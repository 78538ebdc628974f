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

#include "rarrival/ueopl.hpp"

#include <bit>

#include "rarrival/error.hpp"
#include "rarrival/line.hpp"

namespace rarrival {

FlowEncoding::FlowEncoding(const Instance& instance, const FlowBounds& bounds)
    : instance_(&instance), width_(std::bit_width(bounds.max)), dimension_(instance.total_dimension())
{
}

Bits FlowEncoding::encode(const Flow& flow) const
{
    if (!flow.fits(*instance_)) throw ContractViolation("encode: flow does not match the instance");
    Bits out;
    out.reserve(size());
    for (const auto& x : flow.vectors()) {
        for (const auto n : x) {
            if (std::bit_width(n) > width_) throw ContractViolation("encode: coordinate does not fit the width");
            for (std::size_t b = width_; b-- > 0;) out.push_back((n >> b) & 1U);
        }
    }
    return out;
}

Flow FlowEncoding::decode(const Bits& bits) const
{
    if (bits.size() != size())
        throw ContractViolation("decode: expected " + std::to_string(size()) + " bits, got "
                                + std::to_string(bits.size()));
    Flow flow = Flow::zero(*instance_);
    std::size_t pos = 0;
    for (const auto& c : instance_->components()) {
        for (EdgeId e = 0; e < c.dimension(); ++e) {
            std::uint64_t n = 0;
            for (std::size_t b = 0; b < width_; ++b) n = (n << 1) | (bits[pos++] ? 1U : 0U);
            flow.at(c.index(), e) = n;
        }
    }
    return flow;
}

Ueopl::Ueopl(const Instance& instance, const OverflowPolicy& policy)
    : instance_(&instance), bounds_(FlowBounds::of(instance, policy)), encoding_(instance, bounds_)
{
}

bool Ueopl::in_domain(const Flow& flow) const
{
    for (const auto& x : flow.vectors())
        for (const auto n : x)
            if (n > bounds_.max) return false;
    return true;
}

Bits Ueopl::successor(const Bits& x) const
{
    const Flow flow = encoding_.decode(x);
    if (!in_domain(flow)) return x;
    const Flow next = adv(*instance_, flow, bounds_);
    return in_domain(next) ? encoding_.encode(next) : x;
}

Bits Ueopl::predecessor(const Bits& x) const
{
    const Flow flow = encoding_.decode(x);
    if (!in_domain(flow)) return x;
    return encoding_.encode(prev(*instance_, flow, bounds_));
}

std::uint64_t Ueopl::potential(const Bits& x) const
{
    return val(encoding_.decode(x));
}

std::string to_hex(const Bits& bits)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t digits = (bits.size() + 3) / 4;
    const std::size_t pad = digits * 4 - bits.size();
    std::string out;
    out.reserve(digits);
    unsigned nibble = 0;
    for (std::size_t i = 0; i < digits * 4; ++i) {
        nibble = (nibble << 1) | (i >= pad && bits[i - pad] ? 1U : 0U);
        if (i % 4 == 3) {
            out.push_back(kDigits[nibble]);
            nibble = 0;
        }
    }
    return out;
}

Bits from_hex(std::string_view hex, std::size_t width)
{
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    const std::size_t digits = (width + 3) / 4;
    if (hex.size() != digits)
        throw ParseError("expected " + std::to_string(digits) + " hex digits for " + std::to_string(width)
                         + " bits, got " + std::to_string(hex.size()));
    const std::size_t pad = digits * 4 - width;
    Bits out;
    out.reserve(width);
    for (std::size_t i = 0; i < digits; ++i) {
        const char ch = hex[i];
        unsigned v = 0;
        if (ch >= '0' && ch <= '9') v = static_cast<unsigned>(ch - '0');
        else if (ch >= 'a' && ch <= 'f') v = static_cast<unsigned>(ch - 'a' + 10);
        else if (ch >= 'A' && ch <= 'F') v = static_cast<unsigned>(ch - 'A' + 10);
        else throw ParseError(std::string("invalid hex digit '") + ch + "'");
        for (int b = 3; b >= 0; --b) {
            const std::size_t pos = i * 4 + static_cast<std::size_t>(3 - b);
            const bool bit = (v >> b) & 1U;
            if (pos < pad) {
                if (bit) throw ParseError("bit string is wider than " + std::to_string(width) + " bits");
            } else {
                out.push_back(bit);
            }
        }
    }
    return out;
}

}
