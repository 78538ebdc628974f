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

#ifndef RARRIVAL_INSTANCE_TEXT_HPP
#define RARRIVAL_INSTANCE_TEXT_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "rarrival/model.hpp"

namespace rarrival {

/*
 * Line-oriented instance format, '#' starts a comment:
 *
 *   version 1
 *   component <idx>
 *   entry <name> [<name> ...]
 *   exit <name> [<name> ...]
 *   node <name> [<name> ...]
 *   box <bname> <callee-idx>
 *   t <src> <0|1|*> <dst>
 *
 * src is a node or a return port "<box>:<exit>"; dst is a node or a call port
 * "<box>:<entry>".
 */

/// Syntax only; throws ParseError with the offending line. Semantic checks live in validate().
RawInstance parse_instance_text(std::string_view text);

/// Canonical text form. parse_instance_text(to_text(i)) builds an identical instance.
std::string to_text(const Instance& instance);

std::string read_text_file(const std::filesystem::path& path);

/// read + parse + build; throws ParseError or InvalidInstance.
Instance load_instance(const std::filesystem::path& path);

}

#endif
