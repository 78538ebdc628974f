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

#ifndef RARRIVAL_SEMANTICS_HPP
#define RARRIVAL_SEMANTICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rarrival/flow.hpp"
#include "rarrival/model.hpp"

namespace rarrival {

/// q : Sor_i -> {0,1}, indexed by Component::source_slot.
class SwitchPosition
{
public:
    SwitchPosition() = default;
    explicit SwitchPosition(std::size_t sources) : bits_(sources, false) {}

    /// q^0_i, all switches at 0.
    static SwitchPosition initial(const Component& component) { return SwitchPosition(component.sources().size()); }

    [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
    [[nodiscard]] bool get(std::size_t slot) const { return bits_.at(slot); }
    void toggle(std::size_t slot) { bits_.at(slot).flip(); }

    [[nodiscard]] const std::vector<bool>& bits() const noexcept { return bits_; }

    bool operator==(const SwitchPosition&) const = default;

private:
    std::vector<bool> bits_;
};

/// flip_i(v, q): q with the bit of source v inverted. Throws ContractViolation if v is not a source.
SwitchPosition flip(const Component& component, VertexId v, SwitchPosition q);

struct Frame
{
    ComponentId component = 0;  // c_i, the caller
    BoxId box = kNone;          // b_i in B_{c_i}
    SwitchPosition saved;       // q_i

    bool operator==(const Frame&) const = default;
};

/// ((b_1,q_1)...(b_r,q_r), (v,q)) together with the component c_{r+1} that owns v.
struct State
{
    std::vector<Frame> stack;
    ComponentId component = 0;
    VertexId vertex = kNone;
    SwitchPosition position;

    bool operator==(const State&) const = default;
};

/// (ε, (entry, q^0)) in the given component; the default is (ε, (o_1, q^0_1)).
State initial_state(const Instance& instance, ComponentId component = 0, std::optional<VertexId> entry = std::nullopt);

bool well_formed(const Instance& instance, const State& state);

/// The transition function δ. Throws ContractViolation on an ill-formed state.
State step(const Instance& instance, State state);

/// δ applied in place, without the well-formedness check.
void advance(const Instance& instance, State& state);

struct Terminated
{
    VertexId exit = kNone;
    std::uint64_t time = 0;
};

struct StackBlowup
{
    std::uint64_t time = 0;
    std::size_t depth = 0;
};

struct LoopOverflow
{
    ComponentId component = 0;
    EdgeId edge = kNone;
    std::uint64_t time = 0;
};

struct Inconclusive
{
    std::uint64_t steps = 0;
};

using RunOutcome = std::variant<Terminated, StackBlowup, LoopOverflow, Inconclusive>;

const char* outcome_name(const RunOutcome& outcome);

struct RunProfile
{
    Flow flow;                                                  // RunPros(G, t)
    std::vector<std::optional<std::uint64_t>> first_entry;      // S_l
    std::vector<std::optional<std::uint64_t>> exit_time;        // T_l
    std::vector<std::optional<std::vector<Frame>>> canonical;   // β^l
};

struct RunOptions
{
    OverflowPolicy policy;
    /// Hard cap on steps; unset means the default guard.
    std::optional<std::uint64_t> max_steps;
};

/// 10 · Σ_l |E_l ∪ F_l| · N_l, saturating.
std::uint64_t default_step_budget(const Instance& instance, const FlowBounds& bounds);

struct RunResult
{
    RunOutcome outcome;
    RunProfile profile;
    State state;  // the state at the stop time
};

/// Called once per time t = 0, 1, ..., stop with the state and the profile RunPros(G, t).
using RunObserver = std::function<void(std::uint64_t t, const State& state, const RunProfile& profile)>;

/**
 * Simulates from (ε, (o_1, q^0_1)) while maintaining the run profile.
 *
 * Stops at the first of: termination at an exit of G^1; a call stack of
 * depth >= k (the run cannot terminate); a canonical-visit edge count
 * reaching its threshold 2^{p(|V_l|)} + 1 (the profile is just-overflowing);
 * the step budget.
 */
RunResult run(const Instance& instance, const RunOptions& options = {}, const RunObserver& observer = {});

/// Thrown by run_profile when the run stops before the requested time without terminating.
class HorizonExceeded : public std::runtime_error
{
public:
    explicit HorizonExceeded(RunOutcome outcome);
    [[nodiscard]] const RunOutcome& outcome() const noexcept { return outcome_; }

private:
    RunOutcome outcome_;
};

/// RunPros(G, t). After termination the profile is constant, so any t is accepted.
RunProfile run_profile(const Instance& instance, std::uint64_t t, const RunOptions& options = {});

enum class HitAnswer { Yes, No, Inconclusive };

/**
 * Does the run ever reach vertex v of component c?
 *
 * "No" is only reported once the whole future of the run has been seen:
 * after termination, after a stack blow-up (the run then replays the
 * segment between two fresh entries of the same component forever), or
 * after a looping frame repeats a (vertex, switch position) pair.
 */
HitAnswer hits(const Instance& instance, ComponentId c, VertexId v, const RunOptions& options = {});

}

#endif
