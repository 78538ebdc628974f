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

#include "rarrival/flow_json.hpp"

#include <charconv>

#include "rarrival/error.hpp"

namespace rarrival {

nlohmann::ordered_json flow_to_json(const Instance& instance, const Flow& flow)
{
    if (!flow.fits(instance)) throw ContractViolation("flow_to_json: flow does not match the instance");
    nlohmann::ordered_json flows = nlohmann::ordered_json::object();
    for (const auto& c : instance.components()) {
        nlohmann::ordered_json x = nlohmann::ordered_json::object();
        const auto v = flow[c.index()];
        for (EdgeId e = 0; e < v.size(); ++e)
            if (v[e] != 0) x[c.edge_key(e)] = v[e];
        flows[std::to_string(c.index() + 1)] = std::move(x);
    }
    return {{"flows", std::move(flows)}};
}

std::string flow_to_string(const Instance& instance, const Flow& flow)
{
    return flow_to_json(instance, flow).dump();
}

namespace {

ComponentId component_key(const Instance& instance, const std::string& key)
{
    std::uint32_t idx = 0;
    const auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), idx);
    if (ec != std::errc{} || end != key.data() + key.size() || idx == 0 || idx > instance.size())
        throw ParseError("flow JSON: unknown component '" + key + "'");
    return idx - 1;
}

}

Flow flow_from_json(const Instance& instance, const nlohmann::json& doc)
{
    if (!doc.is_object() || !doc.contains("flows") || doc.size() != 1)
        throw ParseError("flow JSON: expected an object with the single key \"flows\"");
    const auto& flows = doc.at("flows");
    if (!flows.is_object()) throw ParseError("flow JSON: \"flows\" must be an object");

    Flow flow = Flow::zero(instance);
    for (const auto& [key, entries] : flows.items()) {
        const ComponentId l = component_key(instance, key);
        if (!entries.is_object()) throw ParseError("flow JSON: component " + key + " must map edges to counts");
        const Component& c = instance.component(l);
        for (const auto& [edge, count] : entries.items()) {
            const auto e = c.find_edge(edge);
            if (!e) throw ParseError("flow JSON: component " + key + " has no edge '" + edge + "'");
            if (!count.is_number_unsigned() && !(count.is_number_integer() && count.get<std::int64_t>() >= 0))
                throw ParseError("flow JSON: count for '" + edge + "' must be a non-negative integer");
            flow.at(l, *e) = count.get<std::uint64_t>();
        }
    }
    return flow;
}

Flow parse_flow(const Instance& instance, std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("flow JSON: ") + e.what());
    }
    return flow_from_json(instance, doc);
}

}
