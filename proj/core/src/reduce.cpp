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

#include "rarrival/reduce.hpp"

#include <map>
#include <sstream>

#include "rarrival/error.hpp"

namespace rarrival {

void check_circuit(const MonotoneCircuit& circuit)
{
    if (circuit.gates.empty()) throw ContractViolation("circuit has no gates");
    if (circuit.output >= circuit.gates.size()) throw ContractViolation("circuit output is not a gate");
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        const Gate& g = circuit.gates[i];
        if ((g.kind == Gate::Kind::And || g.kind == Gate::Kind::Or) && (g.left >= i || g.right >= i))
            throw ContractViolation("gate " + std::to_string(i + 1) + " reads a gate that is not earlier");
    }
}

namespace {

std::vector<std::string> tokens(std::string_view line)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

}

MonotoneCircuit parse_circuit(std::string_view text)
{
    MonotoneCircuit circuit;
    std::map<std::string, std::size_t, std::less<>> index;
    bool have_output = false;
    std::size_t lineno = 0;

    while (!text.empty()) {
        ++lineno;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto tok = tokens(line);
        if (tok.empty()) continue;
        if (have_output) throw ParseError("gate after the 'out' line", lineno);

        if (tok[0] == "out" && tok.size() == 2) {
            const auto it = index.find(tok[1]);
            if (it == index.end()) throw ParseError("unknown output gate '" + tok[1] + "'", lineno);
            circuit.output = it->second;
            have_output = true;
            continue;
        }
        if (tok.size() < 2) throw ParseError("expected '<name> <kind> ...'", lineno);

        Gate g;
        g.name = tok[0];
        if (index.contains(g.name)) throw ParseError("duplicate gate '" + g.name + "'", lineno);
        const std::string& kind = tok[1];
        if (kind == "true" || kind == "false") {
            if (tok.size() != 2) throw ParseError("constant gate takes no inputs", lineno);
            g.kind = kind == "true" ? Gate::Kind::True : Gate::Kind::False;
        } else if (kind == "and" || kind == "or") {
            if (tok.size() != 4) throw ParseError(kind + " gate takes exactly two inputs", lineno);
            g.kind = kind == "and" ? Gate::Kind::And : Gate::Kind::Or;
            std::size_t* slots[] = {&g.left, &g.right};
            for (int k = 0; k < 2; ++k) {
                const std::string& in = tok[2 + k];
                if (in == g.name) throw ParseError("gate '" + g.name + "' reads itself", lineno);
                const auto it = index.find(in);
                if (it == index.end()) throw ParseError("gate '" + in + "' is not defined before use", lineno);
                *slots[k] = it->second;
            }
        } else {
            throw ParseError("unknown gate kind '" + kind + "'", lineno);
        }
        index.emplace(g.name, circuit.gates.size());
        circuit.gates.push_back(std::move(g));
    }
    if (circuit.gates.empty()) throw ParseError("circuit has no gates", lineno);
    if (!have_output) throw ParseError("missing final 'out <name>' line", lineno);
    return circuit;
}

std::string to_text(const MonotoneCircuit& circuit)
{
    check_circuit(circuit);
    std::string out;
    for (const Gate& g : circuit.gates) {
        out += g.name;
        switch (g.kind) {
        case Gate::Kind::True: out += " true"; break;
        case Gate::Kind::False: out += " false"; break;
        case Gate::Kind::And: out += " and "; break;
        case Gate::Kind::Or: out += " or "; break;
        }
        if (g.kind == Gate::Kind::And || g.kind == Gate::Kind::Or)
            out += circuit.gates[g.left].name + " " + circuit.gates[g.right].name;
        out += '\n';
    }
    return out + "out " + circuit.gates[circuit.output].name + "\n";
}

std::vector<bool> eval_circuit(const MonotoneCircuit& circuit)
{
    check_circuit(circuit);
    std::vector<bool> value(circuit.gates.size());
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        const Gate& g = circuit.gates[i];
        switch (g.kind) {
        case Gate::Kind::True: value[i] = true; break;
        case Gate::Kind::False: value[i] = false; break;
        case Gate::Kind::And: value[i] = value[g.left] && value[g.right]; break;
        case Gate::Kind::Or: value[i] = value[g.left] || value[g.right]; break;
        }
    }
    return value;
}

Reduction mcvp_to_ra(const MonotoneCircuit& circuit)
{
    check_circuit(circuit);
    const std::size_t n = circuit.gates.size();

    Reduction r;
    r.map.component.resize(n);
    r.map.component[circuit.output] = 0;
    ComponentId next = 1;
    for (std::size_t i = 0; i < n; ++i)
        if (i != circuit.output) r.map.component[i] = next++;

    const std::string& top = r.map.top;
    const std::string& bot = r.map.bottom;
    RawInstance raw;
    raw.components.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Gate& g = circuit.gates[i];
        RawComponent& c = raw.components[r.map.component[i]];
        c.index = r.map.component[i] + 1;
        c.entry("o").exit(top).exit(bot);
        switch (g.kind) {
        case Gate::Kind::True: c.t("o", top); break;
        case Gate::Kind::False: c.t("o", bot); break;
        case Gate::Kind::And:
        case Gate::Kind::Or: {
            c.box("L", r.map.component[g.left] + 1).box("R", r.map.component[g.right] + 1);
            c.t("o", "L:o").t("R:" + top, top).t("R:" + bot, bot);
            // The left result that decides the gate exits directly; the other one evaluates the right input.
            if (g.kind == Gate::Kind::And) c.t("L:" + top, "R:o").t("L:" + bot, bot);
            else c.t("L:" + top, top).t("L:" + bot, "R:o");
            break;
        }
        }
    }
    r.instance = Instance::build(raw);
    r.target = *r.instance.component(0).find_vertex(top);
    return r;
}

}
