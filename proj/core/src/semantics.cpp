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

#include "rarrival/semantics.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "rarrival/error.hpp"

namespace rarrival {

SwitchPosition flip(const Component& component, VertexId v, SwitchPosition q)
{
    if (v >= component.vertex_count() || !component.is_source(v))
        throw ContractViolation("flip: vertex is not a source of component " + std::to_string(component.index() + 1));
    if (q.size() != component.sources().size()) throw ContractViolation("flip: switch position has the wrong domain");
    q.toggle(component.source_slot(v));
    return q;
}

State initial_state(const Instance& instance, ComponentId component, std::optional<VertexId> entry)
{
    const Component& c = instance.component(component);
    State s;
    s.component = component;
    s.vertex = entry ? *entry : c.entry();
    if (!c.is_entry(s.vertex)) throw ContractViolation("initial_state: vertex is not an entry");
    s.position = SwitchPosition::initial(c);
    return s;
}

bool well_formed(const Instance& instance, const State& state)
{
    for (std::size_t i = 0; i < state.stack.size(); ++i) {
        const Frame& f = state.stack[i];
        if (f.component >= instance.size()) return false;
        const Component& c = instance.component(f.component);
        if (f.box >= c.boxes().size()) return false;
        if (f.saved.size() != c.sources().size()) return false;
        const ComponentId next = i + 1 < state.stack.size() ? state.stack[i + 1].component : state.component;
        if (c.boxes()[f.box].callee != next) return false;
    }
    if (state.component >= instance.size()) return false;
    const Component& c = instance.component(state.component);
    return state.vertex < c.vertex_count() && state.position.size() == c.sources().size();
}

namespace {

VertexId return_port_for(const Component& caller, BoxId box, const Component& callee, VertexId exit)
{
    const auto exits = callee.exits();
    const auto it = std::find(exits.begin(), exits.end(), exit);
    return caller.boxes()[box].return_ports[static_cast<std::size_t>(it - exits.begin())];
}

} // namespace

void advance(const Instance& instance, State& state)
{
    const Component& c = instance.component(state.component);
    const VertexId v = state.vertex;
    if (c.is_source(v)) {
        const auto slot = c.source_slot(v);
        const int label = state.position.get(slot) ? 1 : 0;
        state.vertex = c.successor(v, label);
        state.position.toggle(slot);
    } else if (c.is_call_port(v)) {
        const Vertex& port = c.vertex(v);
        const ComponentId callee = c.boxes()[port.box].callee;
        state.stack.push_back({state.component, port.box, std::move(state.position)});
        state.component = callee;
        state.vertex = port.callee_vertex;
        state.position = SwitchPosition::initial(instance.component(callee));
    } else if (!state.stack.empty()) {
        Frame frame = std::move(state.stack.back());
        state.stack.pop_back();
        const Component& caller = instance.component(frame.component);
        state.vertex = return_port_for(caller, frame.box, c, v);
        state.component = frame.component;
        state.position = std::move(frame.saved);
    }
    // An exit with an empty stack is a fixed point.
}

State step(const Instance& instance, State state)
{
    if (!well_formed(instance, state)) throw ContractViolation("step: ill-formed state");
    advance(instance, state);
    return state;
}

const char* outcome_name(const RunOutcome& outcome)
{
    switch (outcome.index()) {
    case 0: return "terminated";
    case 1: return "stack_blowup";
    case 2: return "loop_overflow";
    default: return "inconclusive";
    }
}

std::uint64_t default_step_budget(const Instance& instance, const FlowBounds& bounds)
{
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    for (const auto& c : instance.components()) {
        const std::uint64_t dim = std::max<std::uint64_t>(c.dimension(), 1);
        const std::uint64_t n = bounds.threshold[c.index()];
        if (n > (kMax - total) / dim / 10) return kMax;
        total += 10 * dim * n;
    }
    return total;
}

HorizonExceeded::HorizonExceeded(RunOutcome outcome)
    : std::runtime_error(std::string("run stopped before the requested time: ") + outcome_name(outcome)),
      outcome_(outcome)
{
}

namespace {

/// Incremental run-profile bookkeeping: only the canonical (first) visit of each component counts.
class ProfileTracker
{
public:
    explicit ProfileTracker(const Instance& instance)
        : instance_(instance), depth_(instance.size(), kNone)
    {
        profile_.flow = Flow::zero(instance);
        profile_.first_entry.assign(instance.size(), std::nullopt);
        profile_.exit_time.assign(instance.size(), std::nullopt);
        profile_.canonical.assign(instance.size(), std::nullopt);
        profile_.first_entry[0] = 0;
        profile_.canonical[0] = std::vector<Frame>{};
        depth_[0] = 0;
    }

    /// Applies δ to `state` (at time t) and updates the profile. Returns the incremented coordinate, if any.
    std::optional<std::pair<ComponentId, EdgeId>> step(State& state, std::uint64_t t)
    {
        std::optional<std::pair<ComponentId, EdgeId>> bumped;
        const Component& c = instance_.component(state.component);
        const VertexId v = state.vertex;
        const std::size_t depth = state.stack.size();

        if (c.is_source(v)) {
            if (canonical(state.component, depth)) {
                const int label = state.position.get(c.source_slot(v)) ? 1 : 0;
                bumped.emplace(state.component, c.edge_for(v, label));
            }
        } else if (c.is_exit(v) && depth > 0) {
            const Frame& frame = state.stack.back();
            if (canonical(frame.component, depth - 1)) {
                const Component& caller = instance_.component(frame.component);
                const Box& box = caller.boxes()[frame.box];
                const VertexId ret = return_port_for(caller, frame.box, c, v);
                bumped.emplace(frame.component, caller.crossing(box.call_ports.front(), ret));
            }
        }

        advance(instance_, state);

        if (bumped) ++profile_.flow.at(bumped->first, bumped->second);
        const ComponentId now = state.component;
        if (!profile_.first_entry[now]) {
            profile_.first_entry[now] = t + 1;
            profile_.canonical[now] = state.stack;
            depth_[now] = state.stack.size();
        }
        if (!profile_.exit_time[now] && instance_.component(now).is_exit(state.vertex))
            profile_.exit_time[now] = t + 1;
        return bumped;
    }

    [[nodiscard]] const RunProfile& profile() const noexcept { return profile_; }

private:
    [[nodiscard]] bool canonical(ComponentId l, std::size_t depth) const
    {
        return depth_[l] == depth && !profile_.exit_time[l];
    }

    const Instance& instance_;
    RunProfile profile_;
    std::vector<std::size_t> depth_;
};

void require_single_entry(const Instance& instance)
{
    if (!instance.single_entry()) throw ContractViolation("run requires a single-entry instance; normalize first");
}

} // namespace

RunResult run(const Instance& instance, const RunOptions& options, const RunObserver& observer)
{
    require_single_entry(instance);
    const FlowBounds bounds = FlowBounds::of(instance, options.policy);
    const std::uint64_t budget = options.max_steps ? *options.max_steps : default_step_budget(instance, bounds);
    const Component& main = instance.component(0);

    State state = initial_state(instance);
    ProfileTracker tracker(instance);
    std::optional<std::pair<ComponentId, EdgeId>> overflow;

    for (std::uint64_t t = 0;; ++t) {
        if (observer) observer(t, state, tracker.profile());
        if (state.stack.empty() && state.component == 0 && main.is_exit(state.vertex))
            return {Terminated{state.vertex, t}, tracker.profile(), std::move(state)};
        if (state.stack.size() >= instance.size())
            return {StackBlowup{t, state.stack.size()}, tracker.profile(), std::move(state)};
        if (overflow)
            return {LoopOverflow{overflow->first, overflow->second, t}, tracker.profile(), std::move(state)};
        if (t >= budget) return {Inconclusive{t}, tracker.profile(), std::move(state)};

        if (auto bumped = tracker.step(state, t)) {
            const auto [l, e] = *bumped;
            if (tracker.profile().flow.at(l, e) >= bounds.threshold[l]) overflow = bumped;
        }
    }
}

RunProfile run_profile(const Instance& instance, std::uint64_t t, const RunOptions& options)
{
    std::optional<RunProfile> at_t;
    RunResult result = run(instance, options, [&](std::uint64_t now, const State&, const RunProfile& profile) {
        if (now == t) at_t = profile;
    });
    if (at_t) return *at_t;
    if (std::holds_alternative<Terminated>(result.outcome)) return result.profile;
    throw HorizonExceeded(result.outcome);
}

HitAnswer hits(const Instance& instance, ComponentId c, VertexId v, const RunOptions& options)
{
    require_single_entry(instance);
    if (c >= instance.size() || v >= instance.component(c).vertex_count())
        throw ContractViolation("hits: no such vertex");
    const FlowBounds bounds = FlowBounds::of(instance, options.policy);
    const std::uint64_t budget = options.max_steps ? *options.max_steps : default_step_budget(instance, bounds);
    const Component& main = instance.component(0);

    State state = initial_state(instance);
    ProfileTracker tracker(instance);

    // Once a canonical count overflows, watch the looping frame for a repeated (vertex, switches) pair.
    std::optional<std::size_t> loop_depth;
    ComponentId loop_component = 0;
    std::set<std::pair<VertexId, std::vector<bool>>> seen;

    for (std::uint64_t t = 0;; ++t) {
        if (state.component == c && state.vertex == v) return HitAnswer::Yes;
        if (state.stack.empty() && state.component == 0 && main.is_exit(state.vertex)) return HitAnswer::No;
        if (state.stack.size() >= instance.size()) return HitAnswer::No;
        if (t >= budget) return HitAnswer::Inconclusive;

        if (loop_depth) {
            if (state.stack.size() < *loop_depth) {
                loop_depth.reset();
                seen.clear();
            } else if (state.stack.size() == *loop_depth && state.component == loop_component) {
                if (!seen.emplace(state.vertex, state.position.bits()).second) return HitAnswer::No;
            }
        }

        if (auto bumped = tracker.step(state, t); bumped && !loop_depth) {
            const auto [l, e] = *bumped;
            if (tracker.profile().flow.at(l, e) >= bounds.threshold[l]) {
                loop_component = l;
                loop_depth = tracker.profile().canonical[l]->size();
            }
        }
    }
}

}
