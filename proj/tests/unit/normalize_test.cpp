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

#include <gtest/gtest.h>

#include "generators.hpp"
#include "rarrival/instance_text.hpp"
#include "rarrival/normalize.hpp"
#include "rarrival/semantics.hpp"

namespace rarrival {
namespace {

using testing::from_text;

TEST(Normalize, SingleEntryIsIdentity)
{
    const Instance inst = testing::load_fixture("mutual.ra");
    const auto n = normalize_single_entry(inst);
    EXPECT_EQ(to_text(n.instance), to_text(inst));
    ASSERT_EQ(n.copies.size(), 2U);
    EXPECT_EQ(n.copy_of(0, "o1"), 0U);
    EXPECT_EQ(n.copy_of(1, "o2"), 1U);
}

TEST(Normalize, TwoEntriesNoBoxes)
{
    const Instance inst = from_text("version 1\ncomponent 1\nentry a b\nexit d\nt a * d\nt b * d\n");
    const auto n = normalize_single_entry(inst);
    ASSERT_EQ(n.instance.size(), 2U);
    EXPECT_TRUE(n.instance.single_entry());
}

constexpr const char* kTwoEntryCallee = R"(version 1
component 1
entry o
exit top bot
box b 2
t o 0 b:e1
t o 1 b:e2
t b:x 0 o2
t b:y * bot
t o2 * b:e1
t b:x 1 top
node o2
component 2
entry e1 e2
exit x y
t e1 * m
t e2 * y
t m 0 x
t m 1 y
)";

TEST(Normalize, SplitsBoxPerCallPort)
{
    const Instance inst = from_text(kTwoEntryCallee);
    const auto n = normalize_single_entry(inst);
    EXPECT_EQ(n.instance.size(), 3U);
    EXPECT_TRUE(n.instance.single_entry());
    EXPECT_EQ(n.instance.component(0).boxes().size(), 2U);
    EXPECT_NE(n.copy_of(1, "e1"), n.copy_of(1, "e2"));
}

/// Runs a possibly multi-entry instance by the transition rule directly on the original.
std::string terminal_exit(const Instance& inst, std::uint64_t steps)
{
    State s = initial_state(inst, 0, inst.component(0).entries().front());
    for (std::uint64_t t = 0; t < steps; ++t) advance(inst, s);
    if (!s.stack.empty() || !inst.component(0).is_exit(s.vertex)) return "";
    return inst.component(0).name(s.vertex);
}

TEST(Normalize, PreservesTermination)
{
    const Instance inst = from_text(kTwoEntryCallee);
    const auto n = normalize_single_entry(inst);
    const RunResult r = run(n.instance);
    ASSERT_TRUE(std::holds_alternative<Terminated>(r.outcome));
    const auto exit = std::get<Terminated>(r.outcome).exit;
    EXPECT_EQ(n.instance.component(0).name(exit), terminal_exit(inst, 1000));
}

TEST(Normalize, Idempotent)
{
    const Instance inst = from_text(kTwoEntryCallee);
    const auto once = normalize_single_entry(inst);
    const auto twice = normalize_single_entry(once.instance);
    EXPECT_EQ(to_text(twice.instance), to_text(once.instance));
}

}
}
