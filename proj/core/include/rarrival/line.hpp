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

#ifndef RARRIVAL_LINE_HPP
#define RARRIVAL_LINE_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rarrival/flow.hpp"

namespace rarrival {

/// U_{i,e}.
struct UnitVector
{
    ComponentId component = 0;
    EdgeId edge = kNone;

    auto operator<=>(const UnitVector&) const = default;
};

Flow add(Flow flow, UnitVector u);
/// Throws ContractViolation when x^i_e = 0.
Flow subtract(Flow flow, UnitVector u);

/// The increment Adv applies, or nothing where Adv is the identity.
std::optional<UnitVector> adv_unit(const Instance& instance, const Flow& flow, const RunLikeStatus& status);

/// The decrement Prev applies, or nothing where Prev is the identity.
std::optional<UnitVector> prev_unit(const Instance& instance, const Flow& flow, const RunLikeStatus& status,
                                    const FlowBounds& bounds);

Flow adv(const Instance& instance, const Flow& flow, const FlowBounds& bounds);
Flow prev(const Instance& instance, const Flow& flow, const FlowBounds& bounds);

/// Every unit whose increment (resp. decrement) lands on a run-like flow that is not post-overflowing.
std::vector<UnitVector> adv_candidates(const Instance& instance, const Flow& flow, const FlowBounds& bounds);
std::vector<UnitVector> prev_candidates(const Instance& instance, const Flow& flow, const FlowBounds& bounds);

/// Brute-force Adv/Prev; throw InternalInvariantError unless exactly one candidate exists.
Flow adv_oracle(const Instance& instance, const Flow& flow, const FlowBounds& bounds);
Flow prev_oracle(const Instance& instance, const Flow& flow, const FlowBounds& bounds);

struct FinishedWitness
{
    Flow flow;
    Classification classification = Classification::Complete;
    std::optional<VertexId> exit;  // d^1 when complete
    std::uint64_t value = 0;
    std::uint64_t steps = 0;
};

struct WalkCheckpoint
{
    std::uint64_t steps = 0;
    std::uint64_t value = 0;
    Classification classification = Classification::InProgress;
};

using WalkProgress = std::function<void(const WalkCheckpoint&)>;

inline constexpr std::uint64_t kCheckpointInterval = std::uint64_t{1} << 16;

/// Σ_l |E_l ∪ F_l| · N_l, saturating.
std::uint64_t walk_bound(const Instance& instance, const FlowBounds& bounds);

/// Iterates Adv from the zero flow to the finished flow. Throws InternalInvariantError if the line breaks.
FinishedWitness walk(const Instance& instance, const OverflowPolicy& policy = {}, const WalkProgress& progress = {});

struct Decision
{
    bool yes = false;
    FinishedWitness witness;
};

/// Does the run terminate at `target`? Throws ContractViolation unless target is an exit of G^1.
Decision decide(const Instance& instance, VertexId target, const OverflowPolicy& policy = {});

struct Claim
{
    enum class Kind { Terminates, Diverges };

    Kind kind = Kind::Terminates;
    VertexId exit = kNone;  // Terminates only
};

struct WitnessVerdict
{
    bool accepted = false;
    std::string reason;
    RunLikeStatus status;
};

/// Arithmetic check that X is finished, lies in F^N and entails the claim. Never simulates.
WitnessVerdict verify_witness(const Instance& instance, const Flow& flow, const Claim& claim, const FlowBounds& bounds);

}

#endif
