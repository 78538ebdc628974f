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

#ifndef RARRIVAL_NORMALIZE_HPP
#define RARRIVAL_NORMALIZE_HPP

#include <map>
#include <string>
#include <vector>

#include "rarrival/model.hpp"

namespace rarrival {

struct EntryCopy
{
    ComponentId original = 0;
    std::string entry;
    ComponentId copy = 0;
};

struct NormalizedInstance
{
    Instance instance;
    /// One record per (original component, entry); ordered by original index then entry name.
    std::vector<EntryCopy> copies;
    /// Per new component: new vertex name -> original vertex name. Vertices inserted by the
    /// normalization (return merge nodes) are absent.
    std::vector<std::map<std::string, std::string>> origin;

    [[nodiscard]] ComponentId copy_of(ComponentId original, const std::string& entry) const;
};

/**
 * Produces an equivalent instance in which every component has one entry.
 *
 * A component with m entries becomes m copies, one per entry; the copy for
 * the first entry of component 1 stays component 1. A box whose callee had
 * several entries is split per call port actually targeted. Split boxes get
 * one return port per copy, so each original return port (b, d) becomes a
 * merge node holding the original switch and fed by the split return ports;
 * runs agree with the original once those merge steps are projected away.
 */
NormalizedInstance normalize_single_entry(const Instance& instance);

}

#endif
