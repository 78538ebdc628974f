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

#include "rarrival/normalize.hpp"

#include <set>

#include "rarrival/error.hpp"

namespace rarrival {

ComponentId NormalizedInstance::copy_of(ComponentId original, const std::string& entry) const
{
    for (const auto& c : copies) {
        if (c.original == original && c.entry == entry) return c.copy;
    }
    throw ContractViolation("no copy for component " + std::to_string(original + 1) + " entry '" + entry + "'");
}

NormalizedInstance normalize_single_entry(const Instance& instance)
{
    NormalizedInstance out;

    std::vector<std::vector<ComponentId>> copy_index(instance.size());
    ComponentId next = 0;
    for (const auto& c : instance.components()) {
        for (VertexId e : c.entries()) {
            copy_index[c.index()].push_back(next);
            out.copies.push_back({c.index(), c.name(e), next});
            ++next;
        }
    }

    RawInstance raw;
    raw.components.resize(next);
    out.origin.resize(next);

    for (const auto& c : instance.components()) {
        for (std::size_t ei = 0; ei < c.entries().size(); ++ei) {
            const ComponentId target = copy_index[c.index()][ei];
            RawComponent& rc = raw.components[target];
            auto& origin = out.origin[target];
            rc.index = target + 1;

            std::set<std::string> taken;
            for (VertexId v = 0; v < c.vertex_count(); ++v) taken.insert(c.name(v));
            for (const auto& b : c.boxes()) taken.insert(b.name);
            auto fresh = [&](std::string base) {
                while (taken.contains(base)) base += '+';
                taken.insert(base);
                return base;
            };

            rc.entry(c.name(c.entries()[ei]));
            for (VertexId x : c.exits()) rc.exit(c.name(x));
            for (VertexId v = 0; v < c.vertex_count(); ++v) {
                if (c.vertex(v).kind != VertexKind::Node) continue;
                origin.emplace(c.name(v), c.name(v));
                if (!c.is_exit(v) && v != c.entries()[ei]) rc.node(c.name(v));
            }

            // Renaming of call-port destinations and return-port sources.
            std::map<std::string, std::string> call_rename;
            std::map<std::string, std::vector<std::string>> return_split;  // old return port -> new ports

            for (BoxId bi = 0; bi < c.boxes().size(); ++bi) {
                const Box& b = c.boxes()[bi];
                const Component& callee = instance.component(b.callee);

                std::vector<std::size_t> used;
                for (std::size_t pi = 0; pi < b.call_ports.size(); ++pi) {
                    const VertexId port = b.call_ports[pi];
                    bool targeted = false;
                    for (VertexId s : c.sources()) {
                        if (c.successor(s, 0) == port || c.successor(s, 1) == port) targeted = true;
                    }
                    if (targeted) used.push_back(pi);
                }

                if (used.size() <= 1) {
                    const std::size_t pi = used.empty() ? 0 : used.front();
                    rc.box(b.name, copy_index[b.callee][pi] + 1);
                    const std::string& entry_name = callee.name(callee.entries()[pi]);
                    origin.emplace(b.name + ":" + entry_name, b.name + ":" + entry_name);
                    for (VertexId ret : b.return_ports) origin.emplace(c.name(ret), c.name(ret));
                    continue;
                }

                for (std::size_t pi : used) {
                    const std::string& entry_name = callee.name(callee.entries()[pi]);
                    const std::string split = fresh(b.name + "@" + entry_name);
                    rc.box(split, copy_index[b.callee][pi] + 1);
                    call_rename[c.name(b.call_ports[pi])] = split + ":" + entry_name;
                    origin.emplace(split + ":" + entry_name, c.name(b.call_ports[pi]));
                    for (VertexId ret : b.return_ports) {
                        const std::string exit_name = callee.name(c.vertex(ret).callee_vertex);
                        return_split[c.name(ret)].push_back(split + ":" + exit_name);
                        origin.emplace(split + ":" + exit_name, c.name(ret));
                    }
                }
            }

            for (VertexId s : c.sources()) {
                const std::string& src = c.name(s);
                auto dest = [&](int label) {
                    const std::string& d = c.name(c.successor(s, label));
                    auto it = call_rename.find(d);
                    return it == call_rename.end() ? d : it->second;
                };
                const bool parallel = c.successor(s, 0) == c.successor(s, 1);

                std::string from = src;
                if (auto split = return_split.find(src); split != return_split.end()) {
                    // Split return ports funnel into one node carrying the original switch.
                    from = fresh(src.substr(0, src.find(':')) + "@" + src.substr(src.find(':') + 1));
                    for (const auto& port : split->second) rc.t(port, -1, from);
                }
                if (parallel) {
                    rc.t(from, -1, dest(0));
                } else {
                    rc.t(from, 0, dest(0));
                    rc.t(from, 1, dest(1));
                }
            }
        }
    }

    out.instance = Instance::build(raw);
    return out;
}

}
