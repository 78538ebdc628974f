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

#ifndef RARRIVAL_FLOW_JSON_HPP
#define RARRIVAL_FLOW_JSON_HPP

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "rarrival/flow.hpp"

namespace rarrival {

/*
 * {"flows": {"<component-idx>": {"u->v": n, "b:o2->b:d2": n}}}
 *
 * Component indices are 1-based, zero coordinates are omitted and keys
 * appear in canonical edge order.
 */

nlohmann::ordered_json flow_to_json(const Instance& instance, const Flow& flow);
std::string flow_to_string(const Instance& instance, const Flow& flow);

/// Throws ParseError on unknown components, unknown edges, or non-integer counts.
Flow flow_from_json(const Instance& instance, const nlohmann::json& doc);
Flow parse_flow(const Instance& instance, std::string_view text);

}

#endif
