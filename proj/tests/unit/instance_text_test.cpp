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
#include "rarrival/error.hpp"
#include "rarrival/instance_text.hpp"

namespace rarrival {
namespace {

TEST(InstanceText, ParsesFixture)
{
    const Instance inst = testing::load_fixture("alternation.ra");
    ASSERT_EQ(inst.size(), 1U);
    const Component& c = inst.component(0);
    EXPECT_EQ(c.name(c.entry()), "s");
    EXPECT_EQ(c.exits().size(), 2U);
    const VertexId o = *c.find_vertex("o");
    EXPECT_EQ(c.name(c.successor(o, 0)), "w");
    EXPECT_EQ(c.name(c.successor(o, 1)), "d");
    EXPECT_TRUE(c.parallel(*c.find_vertex("w")));
}

TEST(InstanceText, ErrorsCarryLineNumbers)
{
    try {
        (void)parse_instance_text("version 1\ncomponent 1\nentry o\nfrobnicate x\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4U);
    }
    EXPECT_THROW((void)parse_instance_text("component 1\n"), ParseError);
    EXPECT_THROW((void)parse_instance_text("version 2\n"), ParseError);
    EXPECT_THROW((void)parse_instance_text("version 1\ncomponent 1\nt o 2 d\n"), ParseError);
}

TEST(InstanceText, CommentsAndBlankLines)
{
    const Instance inst = testing::from_text("# header\nversion 1\n\ncomponent 1   # main\nentry o\nexit d\nt o * d\n");
    EXPECT_EQ(inst.total_dimension(), 1U);
}

TEST(InstanceText, RoundTripRandom)
{
    testing::Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        const Instance inst = testing::random_instance(rng);
        const std::string text = to_text(inst);
        const Instance again = testing::from_text(text);
        EXPECT_EQ(to_text(again), text);
        ASSERT_EQ(again.size(), inst.size());
        for (ComponentId l = 0; l < inst.size(); ++l) {
            const Component& a = inst.component(l);
            const Component& b = again.component(l);
            ASSERT_EQ(a.dimension(), b.dimension());
            for (EdgeId e = 0; e < a.dimension(); ++e) EXPECT_EQ(a.edge_key(e), b.edge_key(e));
        }
    }
}

}
}
