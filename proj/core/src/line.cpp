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

#include "rarrival/line.hpp"

#include <algorithm>
#include <limits>

#include "rarrival/error.hpp"

namespace rarrival {

Flow add(Flow flow, UnitVector u)
{
    auto& x = flow.at(u.component, u.edge);
    if (x == std::numeric_limits<std::uint64_t>::max()) throw ContractViolation("add: coordinate overflow");
    ++x;
    return flow;
}

Flow subtract(Flow flow, UnitVector u)
{
    auto& x = flow.at(u.component, u.edge);
    if (x == 0) throw ContractViolation("subtract: coordinate is already zero");
    --x;
    return flow;
}

namespace {

bool on_line(const RunLikeStatus& status)
{
    return status.run_like() && status.classification != Classification::PostOverflowing;
}

VertexId return_port(const Box& box, const Component& callee, VertexId exit)
{
    const auto exits = callee.exits();
    const auto it = std::find(exits.begin(), exits.end(), exit);
    if (it == exits.end()) throw InternalInvariantError("current vertex of a complete component is not an exit");
    return box.return_ports[static_cast<std::size_t>(it - exits.begin())];
}

}

std::optional<UnitVector> adv_unit(const Instance& instance, const Flow& flow, const RunLikeStatus& status)
{
    if (!on_line(status) || status.finished()) return std::nullopt;
    const ComponentId c = status.active();
    const Component& comp = instance.component(c);
    const VertexId d = status.current(c);

    if (comp.is_source(d)) {
        const auto [zeros, ones] = labelled_counts(comp, flow[c], d);
        return UnitVector{c, comp.edge_for(d, zeros == ones ? 0 : 1)};
    }
    if (comp.is_exit(d) && status.depth() > 0) {
        const ComponentId j = status.caller();
        const Component& caller = instance.component(j);
        const VertexId port = status.current(j);
        const Box& box = caller.boxes()[caller.vertex(port).box];
        return UnitVector{j, caller.crossing(port, return_port(box, comp, d))};
    }
    throw InternalInvariantError("adv: unfinished run-like flow with no successor");
}

std::optional<UnitVector> prev_unit(const Instance& instance, const Flow& flow, const RunLikeStatus& status,
                                    const FlowBounds& bounds)
{
    if (!on_line(status) || flow.is_zero()) return std::nullopt;
    const ComponentId c = status.active();
    ComponentId i = c;
    // A lassoed flow was closed by the call its caller just made.
    if (status.classification == Classification::Lassoed || flow.is_zero(c) || cc(instance, flow, c) != 0)
        i = status.caller();

    const Component& comp = instance.component(i);
    const VertexId d = status.current(i);
    std::optional<UnitVector> found;
    for (const EdgeId e : status.last_used.at(i)) {
        if (comp.edge(e).to != d) continue;
        const UnitVector u{i, e};
        if (!on_line(verify_run_like(instance, subtract(flow, u), bounds))) continue;
        if (found) throw InternalInvariantError("prev: two last-used edges give run-like predecessors");
        found = u;
    }
    if (!found) throw InternalInvariantError("prev: non-zero run-like flow without a predecessor");
    return found;
}

Flow adv(const Instance& instance, const Flow& flow, const FlowBounds& bounds)
{
    const auto u = adv_unit(instance, flow, verify_run_like(instance, flow, bounds));
    return u ? add(flow, *u) : flow;
}

Flow prev(const Instance& instance, const Flow& flow, const FlowBounds& bounds)
{
    const auto u = prev_unit(instance, flow, verify_run_like(instance, flow, bounds), bounds);
    return u ? subtract(flow, *u) : flow;
}

namespace {

template <class Apply>
std::vector<UnitVector> candidates(const Instance& instance, const Flow& flow, const FlowBounds& bounds, Apply apply)
{
    std::vector<UnitVector> out;
    for (const auto& c : instance.components()) {
        for (EdgeId e = 0; e < c.dimension(); ++e) {
            const UnitVector u{c.index(), e};
            const auto next = apply(flow, u);
            if (next && on_line(verify_run_like(instance, *next, bounds))) out.push_back(u);
        }
    }
    return out;
}

Flow unique(const char* what, const Flow& flow, const std::vector<UnitVector>& units, bool increment)
{
    if (units.size() != 1)
        throw InternalInvariantError(std::string(what) + ": " + std::to_string(units.size())
                                     + " candidate units instead of exactly one");
    return increment ? add(flow, units.front()) : subtract(flow, units.front());
}

}

std::vector<UnitVector> adv_candidates(const Instance& instance, const Flow& flow, const FlowBounds& bounds)
{
    return candidates(instance, flow, bounds, [](const Flow& x, UnitVector u) -> std::optional<Flow> {
        if (x.at(u.component, u.edge) == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
        return add(x, u);
    });
}

std::vector<UnitVector> prev_candidates(const Instance& instance, const Flow& flow, const FlowBounds& bounds)
{
    return candidates(instance, flow, bounds, [](const Flow& x, UnitVector u) -> std::optional<Flow> {
        if (x.at(u.component, u.edge) == 0) return std::nullopt;
        return subtract(x, u);
    });
}

Flow adv_oracle(const Instance& instance, const Flow& flow, const FlowBounds& bounds)
{
    return unique("adv_oracle", flow, adv_candidates(instance, flow, bounds), true);
}

Flow prev_oracle(const Instance& instance, const Flow& flow, const FlowBounds& bounds)
{
    return unique("prev_oracle", flow, prev_candidates(instance, flow, bounds), false);
}

std::uint64_t walk_bound(const Instance& instance, const FlowBounds& bounds)
{
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    for (const auto& c : instance.components()) {
        const std::uint64_t n = bounds.threshold[c.index()];
        const std::uint64_t dim = c.dimension();
        if (dim != 0 && n > (kMax - total) / dim) return kMax;
        total += dim * n;
    }
    return total;
}

FinishedWitness walk(const Instance& instance, const OverflowPolicy& policy, const WalkProgress& progress)
{
    if (!instance.single_entry()) throw ContractViolation("walk requires a single-entry instance; normalize first");
    const FlowBounds bounds = FlowBounds::of(instance, policy);
    const std::uint64_t bound = walk_bound(instance, bounds);

    Flow x = Flow::zero(instance);
    for (std::uint64_t steps = 0;; ++steps) {
        const RunLikeStatus status = verify_run_like(instance, x, bounds);
        if (!on_line(status))
            throw InternalInvariantError("walk left the line at step " + std::to_string(steps) + ": "
                                         + std::string(to_string(status.classification)));
        if (progress && steps % kCheckpointInterval == 0) progress({steps, val(x), status.classification});
        if (status.finished()) {
            FinishedWitness w{x, status.classification, std::nullopt, val(x), steps};
            if (status.classification == Classification::Complete) w.exit = status.current(0);
            return w;
        }
        if (steps >= bound) throw InternalInvariantError("walk exceeded its step bound " + std::to_string(bound));
        const UnitVector u = *adv_unit(instance, x, status);
        ++x.at(u.component, u.edge);
    }
}

Decision decide(const Instance& instance, VertexId target, const OverflowPolicy& policy)
{
    const Component& main = instance.component(0);
    if (target >= main.vertex_count() || !main.is_exit(target))
        throw ContractViolation("decide: target is not an exit of component 1");
    Decision d;
    d.witness = walk(instance, policy);
    d.yes = d.witness.exit == target;
    return d;
}

WitnessVerdict verify_witness(const Instance& instance, const Flow& flow, const Claim& claim, const FlowBounds& bounds)
{
    WitnessVerdict v;
    if (!flow.fits(instance)) {
        v.reason = "malformed: flow does not match the instance";
        return v;
    }
    for (const auto& x : flow.vectors())
        for (const auto n : x)
            if (n > bounds.max) {
                v.reason = "coordinate exceeds N = " + std::to_string(bounds.max);
                return v;
            }
    v.status = verify_run_like(instance, flow, bounds);
    const auto cls = v.status.classification;
    if (!v.status.run_like()) {
        v.reason = "not run-like: " + v.status.violations.front().message;
        return v;
    }
    if (!v.status.finished()) {
        v.reason = "not finished: " + std::string(to_string(cls));
        return v;
    }
    const bool terminates = cls == Classification::Complete;
    if (claim.kind == Claim::Kind::Terminates) {
        if (!terminates) {
            v.reason = "claim mismatch: flow is " + std::string(to_string(cls));
            return v;
        }
        if (v.status.current(0) != claim.exit) {
            v.reason = "claim mismatch: flow completes at " + instance.component(0).name(v.status.current(0));
            return v;
        }
    } else if (terminates) {
        v.reason = "claim mismatch: flow is complete";
        return v;
    }
    v.accepted = true;
    return v;
}

}
