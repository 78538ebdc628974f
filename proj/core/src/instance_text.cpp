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

#include "rarrival/instance_text.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "rarrival/error.hpp"

namespace rarrival {

namespace {

std::vector<std::string_view> tokenize(std::string_view line)
{
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

std::size_t parse_index(std::string_view token, std::size_t line)
{
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || value == 0)
        throw ParseError("expected a positive component index, got '" + std::string(token) + "'", line);
    return value;
}

} // namespace

RawInstance parse_instance_text(std::string_view text)
{
    RawInstance raw;
    RawComponent* current = nullptr;
    bool seen_version = false;
    std::size_t line_no = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        const auto tok = tokenize(line);
        if (tok.empty()) continue;
        const std::string_view kw = tok[0];

        if (!seen_version) {
            if (kw != "version" || tok.size() != 2) throw ParseError("expected 'version 1' header", line_no);
            if (tok[1] != "1") throw ParseError("unsupported version '" + std::string(tok[1]) + "'", line_no);
            seen_version = true;
            continue;
        }
        if (kw == "component") {
            if (tok.size() != 2) throw ParseError("usage: component <idx>", line_no);
            current = &raw.components.emplace_back();
            current->index = parse_index(tok[1], line_no);
            current->line = line_no;
            continue;
        }
        if (!current) throw ParseError("'" + std::string(kw) + "' outside a component block", line_no);

        if (kw == "entry" || kw == "exit" || kw == "node") {
            if (tok.size() < 2) throw ParseError(std::string(kw) + " needs at least one name", line_no);
            auto& list = kw == "entry" ? current->entries : kw == "exit" ? current->exits : current->nodes;
            for (std::size_t i = 1; i < tok.size(); ++i) list.emplace_back(tok[i]);
        } else if (kw == "box") {
            if (tok.size() != 3) throw ParseError("usage: box <name> <callee-idx>", line_no);
            current->boxes.push_back({std::string(tok[1]), parse_index(tok[2], line_no), line_no});
        } else if (kw == "t") {
            if (tok.size() != 4) throw ParseError("usage: t <src> <0|1|*> <dst>", line_no);
            int label;
            if (tok[2] == "0") {
                label = 0;
            } else if (tok[2] == "1") {
                label = 1;
            } else if (tok[2] == "*") {
                label = -1;
            } else {
                throw ParseError("transition label must be 0, 1 or *", line_no);
            }
            current->transitions.push_back({std::string(tok[1]), label, std::string(tok[3]), line_no});
        } else if (kw == "version") {
            throw ParseError("duplicate version header", line_no);
        } else {
            throw ParseError("unknown directive '" + std::string(kw) + "'", line_no);
        }
    }
    if (!seen_version) throw ParseError("empty input: expected 'version 1' header", line_no);
    return raw;
}

std::string to_text(const Instance& instance)
{
    const RawInstance raw = instance.to_raw();
    std::ostringstream os;
    os << "version 1\n";
    for (const auto& rc : raw.components) {
        os << "\ncomponent " << rc.index << "\n";
        auto list = [&](const char* kw, const std::vector<std::string>& names) {
            if (names.empty()) return;
            os << kw;
            for (const auto& n : names) os << ' ' << n;
            os << '\n';
        };
        list("entry", rc.entries);
        list("exit", rc.exits);
        list("node", rc.nodes);
        for (const auto& b : rc.boxes) os << "box " << b.name << ' ' << b.callee << '\n';
        for (const auto& t : rc.transitions) {
            os << "t " << t.source << ' ';
            if (t.label < 0) {
                os << '*';
            } else {
                os << t.label;
            }
            os << ' ' << t.target << '\n';
        }
    }
    return os.str();
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Instance load_instance(const std::filesystem::path& path)
{
    return Instance::build(parse_instance_text(read_text_file(path)));
}

}
