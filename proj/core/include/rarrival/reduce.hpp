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

#ifndef RARRIVAL_REDUCE_HPP
#define RARRIVAL_REDUCE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rarrival/model.hpp"

namespace rarrival {

struct Gate
{
    enum class Kind { True, False, And, Or };

    Kind kind = Kind::True;
    std::string name;
    std::size_t left = 0;   // gate indices, strictly earlier
    std::size_t right = 0;
};

struct MonotoneCircuit
{
    std::vector<Gate> gates;  // topological order
    std::size_t output = 0;
};

/// Throws ContractViolation unless every input refers to an earlier gate.
void check_circuit(const MonotoneCircuit& circuit);

/*
 * Netlist, one gate per line, '#' comments:
 *
 *   <name> true|false|and <a> <b>|or <a> <b>
 *   out <name>            (last line)
 */
MonotoneCircuit parse_circuit(std::string_view text);
std::string to_text(const MonotoneCircuit& circuit);

std::vector<bool> eval_circuit(const MonotoneCircuit& circuit);

struct GateComponentMap
{
    std::vector<ComponentId> component;  // per gate
    std::string top = "top";
    std::string bottom = "bot";
};

struct Reduction
{
    Instance instance;
    GateComponentMap map;
    VertexId target = kNone;  // top exit of component 1, the output gate
    std::size_t vertex_constant = 9;  // total vertices <= vertex_constant * gates
};

/// One component per gate with the output gate as component 1; constants exit directly,
/// And/Or call their left input first and short-circuit.
Reduction mcvp_to_ra(const MonotoneCircuit& circuit);

}

#endif
