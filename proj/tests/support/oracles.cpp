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

#include "oracles.hpp"

#include <algorithm>

#include "rarrival/line.hpp"

namespace rarrival::testing {

RunProfile definitional_profile(const Instance& instance, std::uint64_t t)
{
    std::vector<State> history{initial_state(instance)};
    for (std::uint64_t i = 0; i < t; ++i) history.push_back(step(instance, history.back()));

    const std::size_t k = instance.size();
    RunProfile p;
    p.flow = Flow::zero(instance);
    p.first_entry.assign(k, std::nullopt);
    p.exit_time.assign(k, std::nullopt);
    p.canonical.assign(k, std::nullopt);

    for (ComponentId l = 0; l < k; ++l) {
        for (std::uint64_t i = 0; i <= t; ++i) {
            if (history[i].component == l) {
                p.first_entry[l] = i;
                p.canonical[l] = history[i].stack;
                break;
            }
        }
        if (!p.first_entry[l]) continue;
        const Component& c = instance.component(l);
        const auto& beta = *p.canonical[l];

        // Canonical times: in component l with exactly the stack β^l, up to the first exit.
        std::vector<std::uint64_t> times;
        for (std::uint64_t i = *p.first_entry[l]; i <= t; ++i) {
            const State& s = history[i];
            if (s.component != l || s.stack != beta) continue;
            times.push_back(i);
            if (c.is_exit(s.vertex)) {
                p.exit_time[l] = i;
                break;
            }
        }
        for (std::size_t j = 0; j + 1 < times.size(); ++j) {
            const VertexId u = history[times[j]].vertex;
            const VertexId v = history[times[j + 1]].vertex;
            const auto e = c.is_call_port(u) ? std::optional<EdgeId>(c.crossing(u, v)) : c.find_edge(u, v);
            ++p.flow.at(l, *e);
        }
    }
    return p;
}

ProfileSequence distinct_profiles(const Instance& instance, std::uint64_t max_steps)
{
    ProfileSequence seq;
    RunOptions options;
    options.policy = OverflowPolicy::parse("const:62");
    options.max_steps = max_steps;
    const RunResult result = run(instance, options, [&](std::uint64_t, const State&, const RunProfile& p) {
        if (seq.flows.empty() || seq.flows.back() != p.flow) seq.flows.push_back(p.flow);
    });
    seq.outcome = result.outcome;
    return seq;
}

std::vector<Flow> adv_line(const Instance& instance, const FlowBounds& bounds, std::size_t max_length)
{
    std::vector<Flow> out{Flow::zero(instance)};
    while (out.size() < max_length) {
        Flow next = adv(instance, out.back(), bounds);
        if (next == out.back()) break;
        out.push_back(std::move(next));
    }
    return out;
}

void for_each_flow(const Instance& instance, std::uint64_t n, const std::function<void(const Flow&)>& visit)
{
    Flow x = Flow::zero(instance);
    std::vector<std::pair<ComponentId, EdgeId>> coords;
    for (const auto& c : instance.components())
        for (EdgeId e = 0; e < c.dimension(); ++e) coords.emplace_back(c.index(), e);
    for (;;) {
        visit(x);
        std::size_t i = 0;
        for (; i < coords.size(); ++i) {
            auto& v = x.at(coords[i].first, coords[i].second);
            if (v < n) {
                ++v;
                break;
            }
            v = 0;
        }
        if (i == coords.size()) return;
    }
}

bool exceeds(const Flow& flow, std::uint64_t n)
{
    return std::ranges::any_of(flow.vectors(), [&](const auto& x) {
        return std::ranges::any_of(x, [&](std::uint64_t v) { return v > n; });
    });
}

}
