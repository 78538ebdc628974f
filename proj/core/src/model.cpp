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

#include "rarrival/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rarrival/error.hpp"

namespace rarrival {

RawComponent& RawComponent::entry(std::string name)
{
    entries.push_back(std::move(name));
    return *this;
}

RawComponent& RawComponent::exit(std::string name)
{
    exits.push_back(std::move(name));
    return *this;
}

RawComponent& RawComponent::node(std::string name)
{
    nodes.push_back(std::move(name));
    return *this;
}

RawComponent& RawComponent::box(std::string name, std::size_t callee)
{
    boxes.push_back({std::move(name), callee, 0});
    return *this;
}

RawComponent& RawComponent::t(std::string source, int label, std::string target)
{
    transitions.push_back({std::move(source), label, std::move(target), 0});
    return *this;
}

RawComponent& RawInstance::add_component()
{
    RawComponent& c = components.emplace_back();
    c.index = components.size();
    return c;
}

bool ValidationReport::has(std::string_view code) const
{
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
}

namespace {

bool valid_name(std::string_view name)
{
    if (name.empty()) return false;
    for (char ch : name) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9')
                        || ch == '_' || ch == '.' || ch == '@' || ch == '$' || ch == '~' || ch == '-' || ch == '+';
        if (!ok) return false;
    }
    return true;
}

struct PortRef
{
    std::string box;
    std::string port;
};

std::optional<PortRef> split_port(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    return PortRef{std::string(text.substr(0, colon)), std::string(text.substr(colon + 1))};
}

/// Name-level view of one component used by both validation and indexing.
struct ComponentNames
{
    std::set<std::string> nodes;
    std::set<std::string> entries;
    std::set<std::string> exits;
    std::map<std::string, std::size_t> boxes;  // name -> callee (1-based)
};

ComponentNames collect_names(const RawComponent& rc)
{
    ComponentNames n;
    for (const auto& e : rc.entries) {
        n.entries.insert(e);
        n.nodes.insert(e);
    }
    for (const auto& e : rc.exits) {
        n.exits.insert(e);
        n.nodes.insert(e);
    }
    for (const auto& v : rc.nodes) n.nodes.insert(v);
    for (const auto& b : rc.boxes) n.boxes.emplace(b.name, b.callee);
    for (const auto& t : rc.transitions) {
        if (!split_port(t.source)) n.nodes.insert(t.source);
        if (!split_port(t.target)) n.nodes.insert(t.target);
    }
    return n;
}

} // namespace

ValidationReport validate(const RawInstance& raw)
{
    ValidationReport report;
    auto add = [&](std::string code, std::string message, std::size_t component, std::string location,
                   std::size_t line) {
        report.violations.push_back({std::move(code), std::move(message), component, std::move(location), line});
    };

    std::map<std::size_t, const RawComponent*> by_index;
    for (const auto& rc : raw.components) {
        if (!by_index.emplace(rc.index, &rc).second)
            add("duplicate_component", "duplicate component index", rc.index, "", rc.line);
    }
    if (by_index.empty()) {
        add("missing_component", "instance has no components", 0, "", 0);
        return report;
    }
    if (!by_index.contains(1)) add("missing_component", "missing main component 1", 1, "", 0);
    const std::size_t k = by_index.size();
    for (const auto& [idx, rc] : by_index) {
        if (idx == 0 || idx > k)
            add("missing_component", "component indices must be exactly 1.." + std::to_string(k), idx, "",
                rc->line);
    }

    std::map<std::size_t, ComponentNames> names;
    for (const auto& [idx, rc] : by_index) names.emplace(idx, collect_names(*rc));

    for (const auto& [idx, rc] : by_index) {
        const ComponentNames& n = names.at(idx);

        for (const auto& node : n.nodes) {
            if (!valid_name(node)) add("bad_name", "invalid node name '" + node + "'", idx, node, rc->line);
        }
        std::set<std::string> seen_boxes;
        for (const auto& b : rc->boxes) {
            if (!valid_name(b.name)) add("bad_name", "invalid box name '" + b.name + "'", idx, b.name, b.line);
            if (!seen_boxes.insert(b.name).second)
                add("duplicate_name", "box declared twice", idx, b.name, b.line);
            if (n.nodes.contains(b.name))
                add("duplicate_name", "box name clashes with a node", idx, b.name, b.line);
            if (!by_index.contains(b.callee))
                add("dangling_box_label", "dangling box label " + std::to_string(b.callee), idx, b.name, b.line);
        }
        if (n.entries.empty()) add("missing_entry", "component has no entry", idx, "", rc->line);
        for (const auto& e : n.entries) {
            if (n.exits.contains(e)) add("entry_is_exit", "entry is also an exit", idx, e, rc->line);
        }

        auto callee_names = [&](const std::string& box) -> const ComponentNames* {
            auto it = n.boxes.find(box);
            if (it == n.boxes.end()) return nullptr;
            auto c = names.find(it->second);
            return c == names.end() ? nullptr : &c->second;
        };

        // Successor map keyed by (source, label).
        std::map<std::pair<std::string, int>, std::string> succ;
        for (const auto& t : rc->transitions) {
            bool ok = true;
            if (auto port = split_port(t.source)) {
                if (!n.boxes.contains(port->box)) {
                    add("unknown_box", "unknown box '" + port->box + "'", idx, t.source, t.line);
                    ok = false;
                } else if (const auto* callee = callee_names(port->box); callee && !callee->exits.contains(port->port)) {
                    add("bad_port", "'" + port->port + "' is not an exit of the callee", idx, t.source, t.line);
                    ok = false;
                }
            } else if (n.exits.contains(t.source)) {
                add("exit_as_source", "exit has an outgoing transition", idx, t.source, t.line);
                ok = false;
            }
            if (auto port = split_port(t.target)) {
                if (!n.boxes.contains(port->box)) {
                    add("unknown_box", "unknown box '" + port->box + "'", idx, t.target, t.line);
                    ok = false;
                } else if (const auto* callee = callee_names(port->box); callee && !callee->entries.contains(port->port)) {
                    add("bad_port", "'" + port->port + "' is not an entry of the callee", idx, t.target, t.line);
                    ok = false;
                }
            } else if (n.entries.contains(t.target)) {
                add("entry_as_destination", "entry has an incoming transition", idx, t.target, t.line);
                ok = false;
            }
            if (t.label < -1 || t.label > 1) {
                add("bad_label", "transition label must be 0, 1 or *", idx, t.source, t.line);
                ok = false;
            }
            if (!ok) continue;
            for (int label = 0; label < 2; ++label) {
                if (t.label != -1 && t.label != label) continue;
                auto [it, inserted] = succ.emplace(std::make_pair(t.source, label), t.target);
                if (!inserted && it->second != t.target)
                    add("duplicate_transition", "two successors for label " + std::to_string(label), idx, t.source,
                        t.line);
            }
        }

        // Totality of s^0 and s^1 on Sor_i.
        std::vector<std::string> sources;
        for (const auto& node : n.nodes) {
            if (!n.exits.contains(node)) sources.push_back(node);
        }
        for (const auto& [box, callee] : n.boxes) {
            auto c = names.find(callee);
            if (c == names.end()) continue;
            for (const auto& x : c->second.exits) sources.push_back(box + ":" + x);
        }
        for (const auto& s : sources) {
            for (int label = 0; label < 2; ++label) {
                if (!succ.contains({s, label}))
                    add("partial_successor_map",
                        "partial successor map: no successor for label " + std::to_string(label), idx, s, rc->line);
            }
        }
    }
    return report;
}

namespace {

std::string describe(const ValidationReport& report)
{
    std::ostringstream os;
    os << "invalid instance";
    std::size_t shown = 0;
    for (const auto& v : report.violations) {
        os << (shown ? "; " : ": ") << v.message;
        if (v.component) os << " (component " << v.component;
        if (!v.location.empty()) os << (v.component ? ", " : " (") << v.location;
        if (v.component || !v.location.empty()) os << ")";
        if (++shown == 5) break;
    }
    return os.str();
}

} // namespace

InvalidInstance::InvalidInstance(ValidationReport report)
    : std::runtime_error(describe(report)), report_(std::move(report))
{
}

VertexId Component::entry() const
{
    if (entries_.size() != 1)
        throw ContractViolation("component " + std::to_string(index_ + 1) + " does not have a single entry");
    return entries_.front();
}

VertexId Component::successor(VertexId v, int label) const
{
    if (!is_source(v)) throw ContractViolation("'" + name(v) + "' is not a source vertex");
    return succ_[label & 1][v];
}

EdgeId Component::edge_for(VertexId v, int label) const
{
    if (!is_source(v)) throw ContractViolation("'" + name(v) + "' is not a source vertex");
    return edge_for_[label & 1][v];
}

EdgeId Component::crossing(VertexId call_port, VertexId return_port) const
{
    auto e = find_edge(call_port, return_port);
    if (!e || edges_[*e].kind != EdgeKind::Crossing) throw ContractViolation("not a box crossing");
    return *e;
}

std::optional<VertexId> Component::find_vertex(std::string_view name) const
{
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<EdgeId> Component::find_edge(VertexId from, VertexId to) const
{
    auto it = by_endpoints_.find({from, to});
    if (it == by_endpoints_.end()) return std::nullopt;
    return it->second;
}

std::optional<EdgeId> Component::find_edge(std::string_view key) const
{
    // Names never contain '>', so the first '>' ends the separator.
    const auto gt = key.find('>');
    if (gt == std::string_view::npos || gt == 0 || key[gt - 1] != '-') return std::nullopt;
    auto from = find_vertex(key.substr(0, gt - 1));
    auto to = find_vertex(key.substr(gt + 1));
    if (!from || !to) return std::nullopt;
    return find_edge(*from, *to);
}

std::string Component::edge_key(EdgeId e) const
{
    const Edge& edge = edges_.at(e);
    return name(edge.from) + "->" + name(edge.to);
}

Instance Instance::build(const RawInstance& raw)
{
    ValidationReport report = validate(raw);
    if (!report.ok()) throw InvalidInstance(std::move(report));

    std::vector<const RawComponent*> ordered(raw.components.size());
    for (const auto& rc : raw.components) ordered[rc.index - 1] = &rc;

    std::vector<ComponentNames> names;
    names.reserve(ordered.size());
    for (const auto* rc : ordered) names.push_back(collect_names(*rc));

    Instance instance;
    instance.components_.resize(ordered.size());
    for (std::size_t ci = 0; ci < ordered.size(); ++ci) {
        const RawComponent& rc = *ordered[ci];
        const ComponentNames& n = names[ci];
        Component& c = instance.components_[ci];
        c.index_ = static_cast<ComponentId>(ci);

        auto add_vertex = [&](Vertex v) {
            const auto id = static_cast<VertexId>(c.vertices_.size());
            c.by_name_.emplace(v.name, id);
            c.vertices_.push_back(std::move(v));
            return id;
        };

        for (const auto& node : n.nodes) add_vertex({VertexKind::Node, node, kNone, kNone});
        for (const auto& [box_name, callee] : n.boxes) {
            Box box;
            box.name = box_name;
            box.callee = static_cast<ComponentId>(callee - 1);
            const ComponentNames& cn = names[callee - 1];
            const auto box_id = static_cast<BoxId>(c.boxes_.size());
            // Callee vertex ids are node ids, which are the rank of the name in the sorted node set.
            auto callee_node = [&](const std::string& node) {
                return static_cast<VertexId>(std::distance(cn.nodes.begin(), cn.nodes.find(node)));
            };
            for (const auto& e : cn.entries)
                box.call_ports.push_back(add_vertex({VertexKind::CallPort, box_name + ":" + e, box_id, callee_node(e)}));
            for (const auto& x : cn.exits)
                box.return_ports.push_back(
                    add_vertex({VertexKind::ReturnPort, box_name + ":" + x, box_id, callee_node(x)}));
            c.boxes_.push_back(std::move(box));
        }

        const std::size_t nv = c.vertices_.size();
        c.flags_.assign(nv, 0);
        for (const auto& e : n.entries) {
            const VertexId v = c.by_name_.at(e);
            c.flags_[v] |= Component::kEntryFlag;
            c.entries_.push_back(v);
        }
        for (const auto& x : n.exits) {
            const VertexId v = c.by_name_.at(x);
            c.flags_[v] |= Component::kExitFlag;
            c.exits_.push_back(v);
        }

        c.source_slot_.assign(nv, kNone);
        for (VertexId v = 0; v < nv; ++v) {
            const bool source = c.vertices_[v].kind == VertexKind::ReturnPort
                                || (c.vertices_[v].kind == VertexKind::Node && !(c.flags_[v] & Component::kExitFlag));
            if (source) {
                c.source_slot_[v] = static_cast<std::uint32_t>(c.sources_.size());
                c.sources_.push_back(v);
            }
        }

        for (auto& s : c.succ_) s.assign(nv, kNone);
        for (const auto& t : rc.transitions) {
            const VertexId from = c.by_name_.at(t.source);
            const VertexId to = c.by_name_.at(t.target);
            for (int label = 0; label < 2; ++label) {
                if (t.label == -1 || t.label == label) c.succ_[label][from] = to;
            }
        }

        struct Pending
        {
            VertexId from, to;
            std::uint8_t labels;
        };
        std::vector<Pending> internal;
        for (VertexId s : c.sources_) {
            const VertexId to0 = c.succ_[0][s];
            const VertexId to1 = c.succ_[1][s];
            if (to0 == to1) {
                internal.push_back({s, to0, 3});
            } else {
                internal.push_back({s, to0, 1});
                internal.push_back({s, to1, 2});
            }
        }
        std::stable_sort(internal.begin(), internal.end(), [&](const Pending& a, const Pending& b) {
            const auto& na = c.vertices_[a.from].name;
            const auto& nb = c.vertices_[b.from].name;
            if (na != nb) return na < nb;
            return (a.labels & 1) > (b.labels & 1);
        });
        for (auto& s : c.edge_for_) s.assign(nv, kNone);
        for (const auto& p : internal) {
            const auto id = static_cast<EdgeId>(c.edges_.size());
            c.edges_.push_back({EdgeKind::Internal, p.from, p.to, p.labels, kNone});
            c.by_endpoints_.emplace(std::make_pair(p.from, p.to), id);
            if (p.labels & 1) c.edge_for_[0][p.from] = id;
            if (p.labels & 2) c.edge_for_[1][p.from] = id;
        }
        c.internal_count_ = c.edges_.size();

        c.box_crossings_.resize(c.boxes_.size());
        for (BoxId b = 0; b < c.boxes_.size(); ++b) {
            for (VertexId call : c.boxes_[b].call_ports) {
                for (VertexId ret : c.boxes_[b].return_ports) {
                    const auto id = static_cast<EdgeId>(c.edges_.size());
                    c.edges_.push_back({EdgeKind::Crossing, call, ret, 0, b});
                    c.by_endpoints_.emplace(std::make_pair(call, ret), id);
                    c.box_crossings_[b].push_back(id);
                }
            }
        }
    }
    return instance;
}

bool Instance::single_entry() const noexcept
{
    return std::all_of(components_.begin(), components_.end(),
                       [](const Component& c) { return c.entries().size() == 1; });
}

std::size_t Instance::total_dimension() const noexcept
{
    std::size_t total = 0;
    for (const auto& c : components_) total += c.dimension();
    return total;
}

std::size_t Instance::total_vertices() const noexcept
{
    std::size_t total = 0;
    for (const auto& c : components_) total += c.vertex_count();
    return total;
}

RawInstance Instance::to_raw() const
{
    RawInstance raw;
    for (const auto& c : components_) {
        RawComponent& rc = raw.add_component();
        for (VertexId v : c.entries()) rc.entry(c.name(v));
        for (VertexId v : c.exits()) rc.exit(c.name(v));
        for (VertexId v = 0; v < c.vertex_count(); ++v) {
            if (c.vertex(v).kind == VertexKind::Node && !c.is_entry(v) && !c.is_exit(v)) rc.node(c.name(v));
        }
        for (const auto& b : c.boxes()) rc.box(b.name, b.callee + 1);
        for (EdgeId e = 0; e < c.internal_edge_count(); ++e) {
            const Edge& edge = c.edge(e);
            const int label = edge.labels == 3 ? -1 : (edge.labels == 1 ? 0 : 1);
            rc.t(c.name(edge.from), label, c.name(edge.to));
        }
    }
    return raw;
}

bool CallGraph::has_edge(ComponentId from, ComponentId to) const
{
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(from, to));
}

CallGraph call_graph(const Instance& instance)
{
    CallGraph graph;
    graph.size = instance.size();
    for (const auto& c : instance.components()) {
        for (const auto& b : c.boxes()) graph.edges.emplace_back(c.index(), b.callee);
    }
    std::sort(graph.edges.begin(), graph.edges.end());
    graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()), graph.edges.end());
    return graph;
}

std::vector<VertexId> dead_ends(const Component& component)
{
    std::vector<VertexId> result;
    for (VertexId v = 0; v < component.vertex_count(); ++v) {
        if (component.is_exit(v)) {
            result.push_back(v);
        } else if (component.is_source(v) && component.successor(v, 0) == v && component.successor(v, 1) == v) {
            result.push_back(v);
        }
    }
    return result;
}

Instance reroot(const Instance& instance, ComponentId main)
{
    if (main >= instance.size()) throw ContractViolation("reroot: component out of range");
    // new index (1-based) of each old component
    std::vector<std::size_t> renumber(instance.size());
    std::size_t next = 2;
    for (ComponentId c = 0; c < instance.size(); ++c) renumber[c] = (c == main) ? 1 : next++;

    RawInstance raw = instance.to_raw();
    for (auto& rc : raw.components) {
        rc.index = renumber[rc.index - 1];
        for (auto& b : rc.boxes) b.callee = renumber[b.callee - 1];
    }
    std::sort(raw.components.begin(), raw.components.end(),
              [](const RawComponent& a, const RawComponent& b) { return a.index < b.index; });
    return Instance::build(raw);
}

}
