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

#ifndef RARRIVAL_MODEL_HPP
#define RARRIVAL_MODEL_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rarrival {

using ComponentId = std::uint32_t;  // 0-based; text and JSON use 1-based indices
using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using BoxId = std::uint32_t;

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

/*
 * Raw, name-based description of an instance as read from text or assembled by
 * a generator. Nothing here is checked; see validate().
 */

struct RawTransition
{
    std::string source;
    int label = -1;  // 0, 1, or -1 for both
    std::string target;
    std::size_t line = 0;
};

struct RawBox
{
    std::string name;
    std::size_t callee = 0;  // 1-based
    std::size_t line = 0;
};

struct RawComponent
{
    std::size_t index = 0;  // 1-based
    std::vector<std::string> entries;
    std::vector<std::string> exits;
    std::vector<std::string> nodes;
    std::vector<RawBox> boxes;
    std::vector<RawTransition> transitions;
    std::size_t line = 0;

    RawComponent& entry(std::string name);
    RawComponent& exit(std::string name);
    RawComponent& node(std::string name);
    RawComponent& box(std::string name, std::size_t callee);
    RawComponent& t(std::string source, int label, std::string target);
    RawComponent& t(std::string source, std::string target) { return t(std::move(source), -1, std::move(target)); }
};

struct RawInstance
{
    std::vector<RawComponent> components;

    RawComponent& add_component();
};

struct Violation
{
    std::string code;
    std::string message;
    std::size_t component = 0;  // 1-based, 0 if instance-level
    std::string location;       // vertex or box at fault
    std::size_t line = 0;
};

struct ValidationReport
{
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
    [[nodiscard]] bool has(std::string_view code) const;
};

/// Checks every structural invariant of a Recursive Arrival instance.
ValidationReport validate(const RawInstance& raw);

enum class VertexKind : std::uint8_t { Node, CallPort, ReturnPort };

struct Vertex
{
    VertexKind kind = VertexKind::Node;
    std::string name;               // node name, or "box:port"
    BoxId box = kNone;              // ports only
    VertexId callee_vertex = kNone; // ports only: the entry/exit node inside the callee
};

struct Box
{
    std::string name;
    ComponentId callee = 0;
    std::vector<VertexId> call_ports;   // parallel to callee entries
    std::vector<VertexId> return_ports; // parallel to callee exits
};

enum class EdgeKind : std::uint8_t { Internal, Crossing };

struct Edge
{
    EdgeKind kind = EdgeKind::Internal;
    VertexId from = kNone;
    VertexId to = kNone;
    std::uint8_t labels = 0;  // internal: bit s set iff (from, s, to) is a transition
    BoxId box = kNone;        // crossing: the box being crossed
};

class Instance;

/**
 * One switching graph G^i with its nodes, boxes and ports.
 *
 * Vertex ids put nodes first, then for each box its call ports followed by
 * its return ports. Edge ids follow the canonical coordinate order used by
 * every flow vector: internal edges sorted by (source name, label), then
 * box crossings sorted by (box name, entry name, exit name).
 */
class Component
{
public:
    [[nodiscard]] ComponentId index() const noexcept { return index_; }

    [[nodiscard]] std::size_t vertex_count() const noexcept { return vertices_.size(); }
    [[nodiscard]] const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
    [[nodiscard]] std::span<const Vertex> vertices() const noexcept { return vertices_; }
    [[nodiscard]] const std::string& name(VertexId v) const { return vertices_.at(v).name; }

    [[nodiscard]] std::span<const VertexId> entries() const noexcept { return entries_; }
    [[nodiscard]] std::span<const VertexId> exits() const noexcept { return exits_; }
    /// The unique entry o_i; throws ContractViolation unless there is exactly one.
    [[nodiscard]] VertexId entry() const;

    [[nodiscard]] std::span<const Box> boxes() const noexcept { return boxes_; }

    [[nodiscard]] bool is_entry(VertexId v) const { return flags_.at(v) & kEntryFlag; }
    [[nodiscard]] bool is_exit(VertexId v) const { return flags_.at(v) & kExitFlag; }
    [[nodiscard]] bool is_source(VertexId v) const { return source_slot_.at(v) != kNone; }
    [[nodiscard]] bool is_call_port(VertexId v) const { return vertices_.at(v).kind == VertexKind::CallPort; }
    [[nodiscard]] bool is_return_port(VertexId v) const { return vertices_.at(v).kind == VertexKind::ReturnPort; }

    /// Source vertices Sor_i in vertex-id order; a switch position has one bit per entry.
    [[nodiscard]] std::span<const VertexId> sources() const noexcept { return sources_; }
    [[nodiscard]] std::uint32_t source_slot(VertexId v) const { return source_slot_.at(v); }

    /// s^label(v) for a source vertex v.
    [[nodiscard]] VertexId successor(VertexId v, int label) const;
    /// The internal edge (v, s^label(v)).
    [[nodiscard]] EdgeId edge_for(VertexId v, int label) const;
    [[nodiscard]] bool parallel(VertexId v) const { return edge_for(v, 0) == edge_for(v, 1); }

    [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
    [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(e); }
    /// |E_i ∪ F_i|, the length of a flow vector on this component.
    [[nodiscard]] std::size_t dimension() const noexcept { return edges_.size(); }
    [[nodiscard]] std::size_t internal_edge_count() const noexcept { return internal_count_; }
    [[nodiscard]] std::size_t crossing_count() const noexcept { return edges_.size() - internal_count_; }

    /// F_{b,i} for box b, as edge ids.
    [[nodiscard]] std::span<const EdgeId> crossings(BoxId b) const { return box_crossings_.at(b); }
    /// The crossing ((b, call port), (b, return port)).
    [[nodiscard]] EdgeId crossing(VertexId call_port, VertexId return_port) const;

    [[nodiscard]] std::optional<VertexId> find_vertex(std::string_view name) const;
    [[nodiscard]] std::optional<EdgeId> find_edge(VertexId from, VertexId to) const;
    [[nodiscard]] std::optional<EdgeId> find_edge(std::string_view key) const;
    /// "u->v" in vertex names.
    [[nodiscard]] std::string edge_key(EdgeId e) const;

private:
    friend class Instance;

    static constexpr std::uint8_t kEntryFlag = 1;
    static constexpr std::uint8_t kExitFlag = 2;

    ComponentId index_ = 0;
    std::vector<Vertex> vertices_;
    std::vector<std::uint8_t> flags_;
    std::vector<VertexId> entries_;
    std::vector<VertexId> exits_;
    std::vector<Box> boxes_;
    std::vector<VertexId> sources_;
    std::vector<std::uint32_t> source_slot_;
    std::vector<VertexId> succ_[2];
    std::vector<EdgeId> edge_for_[2];
    std::vector<Edge> edges_;
    std::size_t internal_count_ = 0;
    std::vector<std::vector<EdgeId>> box_crossings_;
    std::map<std::string, VertexId, std::less<>> by_name_;
    std::map<std::pair<VertexId, VertexId>, EdgeId> by_endpoints_;
};

/// Thrown by Instance::build when the raw description does not validate.
class InvalidInstance : public std::runtime_error
{
public:
    explicit InvalidInstance(ValidationReport report);
    [[nodiscard]] const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// An immutable, validated Recursive Arrival instance (G^1, ..., G^k).
class Instance
{
public:
    /// Validates and indexes; throws InvalidInstance listing every violation.
    static Instance build(const RawInstance& raw);

    [[nodiscard]] std::size_t size() const noexcept { return components_.size(); }
    [[nodiscard]] const Component& component(ComponentId c) const { return components_.at(c); }
    [[nodiscard]] std::span<const Component> components() const noexcept { return components_; }

    [[nodiscard]] bool single_entry() const noexcept;
    /// Σ_l |E_l ∪ F_l|.
    [[nodiscard]] std::size_t total_dimension() const noexcept;
    [[nodiscard]] std::size_t total_vertices() const noexcept;

    /// Name-based description; Instance::build(to_raw()) reproduces this instance.
    [[nodiscard]] RawInstance to_raw() const;

private:
    std::vector<Component> components_;
};

struct CallGraph
{
    std::size_t size = 0;
    std::vector<std::pair<ComponentId, ComponentId>> edges;  // sorted, self-loops allowed

    [[nodiscard]] bool has_edge(ComponentId from, ComponentId to) const;
};

CallGraph call_graph(const Instance& instance);

/// DEnds_i: sources whose two successors are themselves, plus all exits.
std::vector<VertexId> dead_ends(const Component& component);

/// Renumbers components so that `main` becomes component 1 (index 0).
Instance reroot(const Instance& instance, ComponentId main);

}

#endif
