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

#include "rarrival/flow.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "rarrival/error.hpp"

namespace rarrival {

namespace {

__extension__ typedef __int128 wide_t;

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

} // namespace

OverflowPolicy OverflowPolicy::parse(std::string_view text)
{
    if (text == "linear") return {Kind::Linear, 1};
    if (text == "quadratic") return {Kind::Quadratic, 1};
    if (text.starts_with("const:")) {
        const auto digits = text.substr(6);
        std::uint32_t c = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), c);
        if (ec == std::errc() && ptr == digits.data() + digits.size() && c >= 1) return {Kind::Constant, c};
        throw ParseError("const:C requires an integer C >= 1, got '" + std::string(text) + "'");
    }
    throw ParseError("p-poly must be linear, quadratic or const:C, got '" + std::string(text) + "'");
}

std::string OverflowPolicy::str() const
{
    switch (kind) {
    case Kind::Linear: return "linear";
    case Kind::Quadratic: return "quadratic";
    case Kind::Constant: return "const:" + std::to_string(constant);
    }
    return "linear";
}

std::uint64_t OverflowPolicy::exponent(std::size_t n) const
{
    switch (kind) {
    case Kind::Linear: return n;
    case Kind::Quadratic: return static_cast<std::uint64_t>(n) * n;
    case Kind::Constant: return constant;
    }
    return n;
}

std::uint64_t overflow_threshold(const OverflowPolicy& policy, std::size_t vertex_count)
{
    const std::uint64_t p = policy.exponent(vertex_count);
    if (p >= 63) return kSaturated;
    return (std::uint64_t{1} << p) + 1;
}

FlowBounds FlowBounds::of(const Instance& instance, const OverflowPolicy& policy)
{
    FlowBounds b;
    for (const auto& c : instance.components()) {
        b.threshold.push_back(overflow_threshold(policy, c.vertex_count()));
        b.max = std::max(b.max, b.threshold.back());
    }
    return b;
}

Flow Flow::zero(const Instance& instance)
{
    std::vector<std::vector<std::uint64_t>> x;
    x.reserve(instance.size());
    for (const auto& c : instance.components()) x.emplace_back(c.dimension(), 0);
    return Flow(std::move(x));
}

bool Flow::is_zero() const noexcept
{
    for (const auto& v : x_) {
        for (auto value : v) {
            if (value) return false;
        }
    }
    return true;
}

bool Flow::is_zero(ComponentId l) const
{
    const auto& v = x_.at(l);
    return std::all_of(v.begin(), v.end(), [](std::uint64_t value) { return value == 0; });
}

bool Flow::fits(const Instance& instance) const noexcept
{
    if (x_.size() != instance.size()) return false;
    for (ComponentId l = 0; l < x_.size(); ++l) {
        if (x_[l].size() != instance.component(l).dimension()) return false;
    }
    return true;
}

std::size_t FlowHash::operator()(const Flow& flow) const noexcept
{
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& v : flow.vectors()) {
        for (auto value : v) h = (h ^ value) * 0x100000001b3ull + (h >> 29);
        h ^= 0xff51afd7ed558ccdull;
    }
    return h;
}

std::uint64_t val(const Flow& flow)
{
    std::uint64_t total = 0;
    for (const auto& v : flow.vectors()) {
        for (auto value : v) total += value;
    }
    return total;
}

std::uint64_t cc(const Instance& instance, const Flow& flow, ComponentId l)
{
    std::uint64_t total = 0;
    for (const auto& c : instance.components()) {
        for (BoxId b = 0; b < c.boxes().size(); ++b) {
            if (c.boxes()[b].callee != l) continue;
            for (EdgeId f : c.crossings(b)) total += flow.at(c.index(), f);
        }
    }
    return total;
}

std::string_view code_of(FlowCondition condition)
{
    switch (condition) {
    case FlowCondition::Conservation: return "flow_conservation";
    case FlowCondition::Parity: return "switching_parity";
    case FlowCondition::Box: return "box_condition";
    }
    return "flow_conservation";
}

std::pair<std::uint64_t, std::uint64_t> labelled_counts(const Component& component, std::span<const std::uint64_t> x,
                                                        VertexId v)
{
    const EdgeId e0 = component.edge_for(v, 0);
    const EdgeId e1 = component.edge_for(v, 1);
    if (e0 == e1) return {x[e0] - x[e0] / 2, x[e0] / 2};
    return {x[e0], x[e1]};
}

namespace {

ComponentFlowStatus check_component(const Component& c, std::span<const std::uint64_t> x, std::uint64_t& ops)
{
    if (x.size() != c.dimension())
        throw ContractViolation("flow vector for component " + std::to_string(c.index() + 1) + " has "
                                + std::to_string(x.size()) + " coordinates, expected "
                                + std::to_string(c.dimension()));
    ComponentFlowStatus status;
    const VertexId entry = c.entry();

    bool zero = true;
    for (auto value : x) {
        ++ops;
        if (value) {
            zero = false;
            break;
        }
    }
    if (zero) {
        status.kind = ComponentFlowStatus::Kind::Zero;
        status.current = entry;
        return status;
    }

    auto violate = [&](FlowCondition cond, std::string where, std::string message) {
        status.violations.push_back({cond, std::move(where), std::move(message)});
    };

    std::vector<wide_t> balance(c.vertex_count(), 0);  // inflow - outflow
    for (EdgeId e = 0; e < c.dimension(); ++e) {
        ++ops;
        const Edge& edge = c.edge(e);
        balance[edge.to] += x[e];
        balance[edge.from] -= x[e];
    }
    VertexId current = kNone;
    std::size_t absorbing = 0;
    for (VertexId v = 0; v < c.vertex_count(); ++v) {
        ++ops;
        if (v == entry) {
            if (balance[v] != -1) violate(FlowCondition::Conservation, c.name(v), "entry must emit exactly one unit");
        } else if (balance[v] == 1) {
            current = v;
            ++absorbing;
        } else if (balance[v] != 0) {
            violate(FlowCondition::Conservation, c.name(v), "vertex is not balanced");
        }
    }
    if (absorbing != 1)
        violate(FlowCondition::Conservation, "",
                absorbing ? "more than one candidate current vertex" : "no current vertex");

    for (VertexId v : c.sources()) {
        ++ops;
        if (c.parallel(v)) continue;
        const std::uint64_t x0 = x[c.edge_for(v, 0)];
        const std::uint64_t x1 = x[c.edge_for(v, 1)];
        if (x0 < x1 || x0 - x1 > 1)
            violate(FlowCondition::Parity, c.name(v),
                    "switching parity: label counts " + std::to_string(x0) + "/" + std::to_string(x1));
    }

    for (BoxId b = 0; b < c.boxes().size(); ++b) {
        std::size_t used = 0;
        for (EdgeId f : c.crossings(b)) {
            ++ops;
            if (x[f]) ++used;
        }
        if (used > 1) violate(FlowCondition::Box, c.boxes()[b].name, "box crossed through more than one exit");
    }

    if (!status.violations.empty()) {
        status.kind = ComponentFlowStatus::Kind::Invalid;
        return status;
    }
    status.kind = ComponentFlowStatus::Kind::Valid;
    status.current = current;
    status.complete = c.is_exit(current);
    status.call_pending = c.is_call_port(current);
    return status;
}

std::vector<EdgeId> lue_unchecked(const Component& c, std::span<const std::uint64_t> x, std::uint64_t& ops)
{
    std::vector<EdgeId> edges;
    for (VertexId v : c.sources()) {
        ++ops;
        const auto [c0, c1] = labelled_counts(c, x, v);
        if (c0 != c1) {
            edges.push_back(c.edge_for(v, 0));
        } else if (c0 > 0) {
            edges.push_back(c.edge_for(v, 1));
        }
    }
    for (EdgeId f = static_cast<EdgeId>(c.internal_edge_count()); f < c.dimension(); ++f) {
        ++ops;
        if (x[f]) edges.push_back(f);
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

/// Number of cycles of a graph with out-degree <= 1, and whether `mark` lies on one.
std::pair<std::size_t, bool> functional_cycles(const std::vector<VertexId>& next, VertexId mark, std::uint64_t& ops)
{
    const std::size_t n = next.size();
    std::vector<std::uint32_t> seen(n, 0);  // 0 unvisited, otherwise the walk id
    std::size_t cycles = 0;
    bool on_cycle = false;
    std::uint32_t walk = 0;
    for (VertexId s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++walk;
        VertexId v = s;
        while (v != kNone && !seen[v]) {
            ++ops;
            seen[v] = walk;
            v = next[v];
        }
        if (v != kNone && seen[v] == walk) {
            ++cycles;
            VertexId u = v;
            do {
                ++ops;
                if (u == mark) on_cycle = true;
                u = next[u];
            } while (u != v);
        }
    }
    return {cycles, on_cycle};
}

bool has_cycle(std::size_t k, const std::vector<ComponentEdge>& edges, std::uint64_t& ops)
{
    std::vector<std::vector<ComponentId>> adj(k);
    for (auto [a, b] : edges) adj[a].push_back(b);
    std::vector<std::uint8_t> color(k, 0);
    std::vector<std::pair<ComponentId, std::size_t>> stack;
    for (ComponentId s = 0; s < k; ++s) {
        if (color[s]) continue;
        stack.push_back({s, 0});
        color[s] = 1;
        while (!stack.empty()) {
            ++ops;
            auto& [v, i] = stack.back();
            if (i < adj[v].size()) {
                const ComponentId w = adj[v][i++];
                if (color[w] == 1) return true;
                if (color[w] == 0) {
                    color[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

void check_shape(const Instance& instance, const Flow& flow)
{
    if (!flow.fits(instance)) throw ContractViolation("flow shape does not match the instance");
}

/// Recursive-flow conditions on top of already computed component statuses.
void check_crossings(const Instance& instance, const Flow& flow, const std::vector<ComponentFlowStatus>& st,
                     std::vector<FlowViolation>& out, std::uint64_t& ops)
{
    for (const auto& c : instance.components()) {
        for (EdgeId f = static_cast<EdgeId>(c.internal_edge_count()); f < c.dimension(); ++f) {
            ++ops;
            if (!flow.at(c.index(), f)) continue;
            const Edge& edge = c.edge(f);
            const Box& box = c.boxes()[edge.box];
            const ComponentFlowStatus& callee = st[box.callee];
            if (!callee.complete) {
                out.push_back({"crossing_incomplete_callee", "crossing into a component that is not complete",
                               c.index(), c.edge_key(f)});
            } else if (c.vertex(edge.to).callee_vertex != callee.current) {
                out.push_back({"crossing_exit_mismatch", "crossing/exit mismatch", c.index(), c.edge_key(f)});
            }
        }
    }
}

} // namespace

ComponentFlowStatus verify_component_flow(const Component& component, std::span<const std::uint64_t> x)
{
    std::uint64_t ops = 0;
    return check_component(component, x, ops);
}

RecursiveFlowReport verify_recursive_flow(const Instance& instance, const Flow& flow)
{
    check_shape(instance, flow);
    RecursiveFlowReport report;
    std::uint64_t ops = 0;
    for (const auto& c : instance.components()) {
        report.components.push_back(check_component(c, flow[c.index()], ops));
        for (const auto& v : report.components.back().violations)
            report.violations.push_back({std::string(code_of(v.condition)), v.message, c.index(), v.location});
    }
    if (report.ok()) check_crossings(instance, flow, report.components, report.violations, ops);
    return report;
}

std::vector<EdgeId> last_used_edges(const Component& component, std::span<const std::uint64_t> x)
{
    std::uint64_t ops = 0;
    if (!check_component(component, x, ops).ok())
        throw ContractViolation("last_used_edges: not a component switching flow");
    return lue_unchecked(component, x, ops);
}

namespace {

CallGraphs graphs_unchecked(const Instance& instance, const Flow& flow, const std::vector<ComponentFlowStatus>& st,
                            std::uint64_t& ops)
{
    CallGraphs g;
    for (const auto& c : instance.components()) {
        const ComponentFlowStatus& s = st[c.index()];
        if (s.call_pending) g.pending.emplace_back(c.index(), c.boxes()[c.vertex(s.current).box].callee);
        for (BoxId b = 0; b < c.boxes().size(); ++b) {
            for (EdgeId f : c.crossings(b)) {
                ++ops;
                if (flow.at(c.index(), f)) {
                    g.completed.emplace_back(c.index(), c.boxes()[b].callee);
                    break;
                }
            }
        }
    }
    std::sort(g.completed.begin(), g.completed.end());
    g.completed.erase(std::unique(g.completed.begin(), g.completed.end()), g.completed.end());
    return g;
}

} // namespace

CallGraphs derived_graphs(const Instance& instance, const Flow& flow)
{
    RecursiveFlowReport report = verify_recursive_flow(instance, flow);
    if (!report.ok()) throw ContractViolation("derived_graphs: not a recursive switching flow");
    std::uint64_t ops = 0;
    return graphs_unchecked(instance, flow, report.components, ops);
}

std::string_view to_string(Classification c)
{
    switch (c) {
    case Classification::InProgress: return "in_progress";
    case Classification::Complete: return "complete";
    case Classification::Lassoed: return "lassoed";
    case Classification::JustOverflowing: return "just_overflowing";
    case Classification::PostOverflowing: return "post_overflowing";
    case Classification::NotRunLike: return "not_run_like";
    }
    return "not_run_like";
}

RunLikeStatus verify_run_like(const Instance& instance, const Flow& flow, const FlowBounds& bounds)
{
    check_shape(instance, flow);
    RunLikeStatus st;
    std::uint64_t& ops = st.operations;
    const std::size_t k = instance.size();

    bool components_ok = true;
    for (const auto& c : instance.components()) {
        st.components.push_back(check_component(c, flow[c.index()], ops));
        for (const auto& v : st.components.back().violations) {
            st.violations.push_back({std::string(code_of(v.condition)), v.message, c.index(), v.location});
            components_ok = false;
        }
    }
    if (!components_ok) return st;

    for (ComponentId l = 0; l < k; ++l) {
        if (st.components[l].complete) st.complete.push_back(l);
        if (st.components[l].call_pending) st.pending.push_back(l);
    }
    check_crossings(instance, flow, st.components, st.violations, ops);

    // Last-used-edge graphs: acyclic, or one cycle through the current vertex.
    st.last_used.resize(k);
    for (const auto& c : instance.components()) {
        const ComponentId l = c.index();
        st.last_used[l] = lue_unchecked(c, flow[l], ops);
        std::vector<VertexId> next(c.vertex_count(), kNone);
        for (EdgeId e : st.last_used[l]) next[c.edge(e).from] = c.edge(e).to;
        const auto [cycles, through_current] = functional_cycles(next, st.components[l].current, ops);
        if (cycles > 1 || (cycles == 1 && !through_current))
            st.violations.push_back({"lue_cycle",
                                     cycles > 1 ? "last-used-edge graph has more than one cycle"
                                                : "last-used-edge cycle avoids the current vertex",
                                     l, ""});
    }

    st.graphs = graphs_unchecked(instance, flow, st.components, ops);

    // Pending calls must form a path from component 1, possibly closing into a lasso.
    std::vector<ComponentId> pend_next(k, kNone);
    for (auto [a, b] : st.graphs.pending) pend_next[a] = b;
    const std::size_t r = st.pending.size();
    if (r == 0) {
        st.order = {0};
    } else if (pend_next[0] == kNone) {
        st.violations.push_back({"pending_call_shape", "component 1 has no pending call although others do", 0, ""});
    } else {
        std::vector<bool> visited(k, false);
        ComponentId cur = 0;
        std::vector<ComponentId> order;
        bool ok = true;
        for (std::size_t i = 0; i < r; ++i) {
            ++ops;
            if (cur == kNone || pend_next[cur] == kNone || visited[cur]) {
                ok = false;
                break;
            }
            visited[cur] = true;
            order.push_back(cur);
            cur = pend_next[cur];
        }
        if (ok) {
            order.push_back(cur);
            st.order = std::move(order);
        } else {
            st.violations.push_back(
                {"pending_call_shape", "pending calls do not form a path or lasso from component 1", kNone, ""});
        }
    }

    if (!st.order.empty()) {
        const ComponentId last = st.order.back();
        for (ComponentId l = 0; l < k; ++l) {
            ++ops;
            const auto& s = st.components[l];
            if (s.complete || s.call_pending || s.kind == ComponentFlowStatus::Kind::Zero || l == last) continue;
            st.violations.push_back({"stray_component", "component in progress outside the pending-call chain", l, ""});
        }
    }

    if (has_cycle(k, st.graphs.completed, ops))
        st.violations.push_back({"completed_call_cycle", "completed-call cycle", kNone, ""});

    {
        std::vector<std::vector<ComponentId>> adj(k);
        for (auto [a, b] : st.graphs.pending) adj[a].push_back(b);
        for (auto [a, b] : st.graphs.completed) adj[a].push_back(b);
        std::vector<bool> reach(k, false);
        std::vector<ComponentId> queue{0};
        reach[0] = true;
        while (!queue.empty()) {
            const ComponentId v = queue.back();
            queue.pop_back();
            for (ComponentId w : adj[v]) {
                ++ops;
                if (!reach[w]) {
                    reach[w] = true;
                    queue.push_back(w);
                }
            }
        }
        for (ComponentId l = 0; l < k; ++l) {
            if (!reach[l] && st.components[l].kind != ComponentFlowStatus::Kind::Zero)
                st.violations.push_back(
                    {"unreachable_component", "non-zero component unreachable from component 1", l, ""});
        }
    }

    if (!st.violations.empty()) return st;

    if (st.components[0].complete) {
        st.classification = Classification::Complete;
        return st;
    }

    bool post = false;
    std::size_t just = 0;
    for (const auto& c : instance.components()) {
        const ComponentId l = c.index();
        const std::uint64_t limit = bounds.threshold.at(l);
        for (EdgeId e = 0; e < c.dimension(); ++e) {
            ++ops;
            const std::uint64_t value = flow.at(l, e);
            if (value > limit) {
                post = true;
            } else if (value == limit) {
                if (c.edge(e).to == st.components[l].current) {
                    ++just;
                    st.overflow = std::make_pair(l, e);
                } else {
                    post = true;
                }
            }
        }
    }
    if (just > 1) post = true;
    // The overflowing edge must be the one last used, i.e. removing it stays run-like;
    // an older edge left at the threshold means the overflow happened earlier.
    if (just == 1 && !post) {
        const auto [l, e] = *st.overflow;
        Flow before = flow;
        --before.at(l, e);
        const RunLikeStatus prior = verify_run_like(instance, before, bounds);
        ops += prior.operations;
        if (!prior.run_like()) post = true;
    }
    if (just != 1 || post) st.overflow.reset();

    const bool lassoed = st.components[st.active()].call_pending;
    if (post) {
        st.classification = Classification::PostOverflowing;
    } else if (lassoed) {
        st.classification = Classification::Lassoed;
    } else if (just == 1) {
        st.classification = Classification::JustOverflowing;
    } else {
        st.classification = Classification::InProgress;
    }
    return st;
}

}
