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

#ifndef RARRIVAL_FLOW_HPP
#define RARRIVAL_FLOW_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rarrival/model.hpp"

namespace rarrival {

/// The polynomial p that sets the overflow threshold 2^{p(|V_l|)} + 1.
struct OverflowPolicy
{
    enum class Kind { Linear, Quadratic, Constant };

    Kind kind = Kind::Linear;
    std::uint32_t constant = 1;

    /// "linear", "quadratic" or "const:C" with C >= 1; throws ParseError otherwise.
    static OverflowPolicy parse(std::string_view text);
    [[nodiscard]] std::string str() const;
    [[nodiscard]] std::uint64_t exponent(std::size_t n) const;

    bool operator==(const OverflowPolicy&) const = default;
};

/// 2^{p(n)} + 1, saturating at the largest representable count.
std::uint64_t overflow_threshold(const OverflowPolicy& policy, std::size_t vertex_count);

struct FlowBounds
{
    std::vector<std::uint64_t> threshold;  // per component: 2^{p(|V_l|)} + 1
    std::uint64_t max = 0;                 // N, the coordinate bound of F^N

    static FlowBounds of(const Instance& instance, const OverflowPolicy& policy);
};

/// A tuple (x^1, ..., x^k) of non-negative edge-count vectors in canonical edge order.
class Flow
{
public:
    Flow() = default;
    explicit Flow(std::vector<std::vector<std::uint64_t>> vectors) : x_(std::move(vectors)) {}

    static Flow zero(const Instance& instance);

    [[nodiscard]] std::size_t size() const noexcept { return x_.size(); }
    [[nodiscard]] std::span<const std::uint64_t> operator[](ComponentId l) const { return x_.at(l); }
    [[nodiscard]] std::span<std::uint64_t> operator[](ComponentId l) { return x_.at(l); }
    [[nodiscard]] std::uint64_t at(ComponentId l, EdgeId e) const { return x_.at(l).at(e); }
    [[nodiscard]] std::uint64_t& at(ComponentId l, EdgeId e) { return x_.at(l).at(e); }

    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] bool is_zero(ComponentId l) const;
    /// True iff the shape matches the instance's edge index.
    [[nodiscard]] bool fits(const Instance& instance) const noexcept;

    [[nodiscard]] const std::vector<std::vector<std::uint64_t>>& vectors() const noexcept { return x_; }

    bool operator==(const Flow&) const = default;
    auto operator<=>(const Flow&) const = default;

private:
    std::vector<std::vector<std::uint64_t>> x_;
};

struct FlowHash
{
    std::size_t operator()(const Flow& flow) const noexcept;
};

/// Val: the sum of every coordinate.
std::uint64_t val(const Flow& flow);

/// CC(X, l): crossings of boxes labelled l, summed over all components.
std::uint64_t cc(const Instance& instance, const Flow& flow, ComponentId l);

enum class FlowCondition : std::uint8_t { Conservation, Parity, Box };

std::string_view code_of(FlowCondition condition);

struct ComponentViolation
{
    FlowCondition condition;
    std::string location;  // vertex or box name
    std::string message;
};

struct ComponentFlowStatus
{
    enum class Kind { Zero, Valid, Invalid };

    Kind kind = Kind::Zero;
    VertexId current = kNone;  // d^l; the entry for the zero vector
    bool complete = false;     // d^l is an exit
    bool call_pending = false; // d^l is a call port
    std::vector<ComponentViolation> violations;

    [[nodiscard]] bool ok() const noexcept { return kind != Kind::Invalid; }
};

/**
 * Checks flow conservation (entry emits one unit, exactly one other vertex
 * absorbs one, all else balanced), switching parity at every source and the
 * box condition. Violations are reported exhaustively.
 *
 * Where s^0(v) = s^1(v) both labels share one coordinate; the labelled counts
 * are then ceil(x/2) and floor(x/2) and the parity bounds hold trivially.
 */
ComponentFlowStatus verify_component_flow(const Component& component, std::span<const std::uint64_t> x);

struct FlowViolation
{
    std::string code;
    std::string message;
    ComponentId component = kNone;
    std::string location;
};

struct RecursiveFlowReport
{
    std::vector<ComponentFlowStatus> components;
    std::vector<FlowViolation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Component checks plus crossing consistency with complete callees.
RecursiveFlowReport verify_recursive_flow(const Instance& instance, const Flow& flow);

/// Labelled traversal counts at source v as (count of label 0, count of label 1).
std::pair<std::uint64_t, std::uint64_t> labelled_counts(const Component& component, std::span<const std::uint64_t> x,
                                                        VertexId v);

/// LUE edge set, sorted by edge id. Throws ContractViolation unless x is a component switching flow.
std::vector<EdgeId> last_used_edges(const Component& component, std::span<const std::uint64_t> x);

using ComponentEdge = std::pair<ComponentId, ComponentId>;

struct CallGraphs
{
    std::vector<ComponentEdge> pending;    // PendE
    std::vector<ComponentEdge> completed;  // ComE
};

/// Pending-call and completed-call graphs. Throws ContractViolation unless X is a recursive switching flow.
CallGraphs derived_graphs(const Instance& instance, const Flow& flow);

enum class Classification { InProgress, Complete, Lassoed, JustOverflowing, PostOverflowing, NotRunLike };

std::string_view to_string(Classification c);

struct RunLikeStatus
{
    Classification classification = Classification::NotRunLike;
    std::vector<FlowViolation> violations;
    std::vector<ComponentFlowStatus> components;
    std::vector<ComponentId> complete;  // K_X
    std::vector<ComponentId> pending;   // J_X
    std::vector<ComponentId> order;     // j_1, ..., j_{r+1}; empty if the pending calls are malformed
    CallGraphs graphs;
    std::vector<std::vector<EdgeId>> last_used;
    std::optional<std::pair<ComponentId, EdgeId>> overflow;  // the just-overflowing coordinate
    std::uint64_t operations = 0;  // primitive checks performed

    [[nodiscard]] bool run_like() const noexcept { return classification != Classification::NotRunLike; }
    [[nodiscard]] bool finished() const noexcept
    {
        return classification == Classification::Complete || classification == Classification::Lassoed
               || classification == Classification::JustOverflowing;
    }
    /// j_{r+1}, the component the imagined run is executing.
    [[nodiscard]] ComponentId active() const { return order.back(); }
    /// j_r, the caller with the innermost pending call; requires r >= 1.
    [[nodiscard]] ComponentId caller() const { return order.at(order.size() - 2); }
    [[nodiscard]] std::size_t depth() const noexcept { return pending.size(); }
    [[nodiscard]] VertexId current(ComponentId l) const { return components.at(l).current; }
};

/**
 * Full run-like check and classification against the thresholds in `bounds`.
 * Fails with one violation per broken condition; codes:
 *   flow_conservation, switching_parity, box_condition,
 *   crossing_incomplete_callee, crossing_exit_mismatch,
 *   lue_cycle, pending_call_shape, stray_component,
 *   completed_call_cycle, unreachable_component.
 * Precedence when run-like: complete, post-overflowing, lassoed, just-overflowing.
 */
RunLikeStatus verify_run_like(const Instance& instance, const Flow& flow, const FlowBounds& bounds);

}

#endif
