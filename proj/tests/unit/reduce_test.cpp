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
#include "rarrival/line.hpp"
#include "rarrival/reduce.hpp"
#include "rarrival/semantics.hpp"

namespace rarrival {
namespace {

MonotoneCircuit circuit(std::string_view text)
{
    return parse_circuit(text);
}

TEST(Circuit, Evaluate)
{
    EXPECT_EQ(eval_circuit(circuit("g1 true\nout g1\n")), (std::vector<bool>{true}));
    EXPECT_EQ(eval_circuit(circuit("a true\nb false\nc and a b\nout c\n")), (std::vector<bool>{true, false, false}));
    EXPECT_EQ(eval_circuit(circuit("a true\nb false\nc or a b\nd and a c\nout d\n")),
              (std::vector<bool>{true, false, true, true}));
}

TEST(Circuit, ParseErrors)
{
    const auto c = circuit("g1 true\ng2 false\ng3 and g1 g2\nout g3");
    EXPECT_EQ(c.gates.size(), 3U);
    EXPECT_EQ(c.output, 2U);
    EXPECT_THROW((void)circuit("g1 and g2 g3\nout g1\n"), ParseError);
    EXPECT_THROW((void)circuit("g1 or g1 g1\nout g1\n"), ParseError);
    EXPECT_THROW((void)circuit("g1 xor g1 g1\nout g1\n"), ParseError);
    EXPECT_THROW((void)circuit("g1 true\n"), ParseError);
    EXPECT_THROW((void)circuit("g1 true\ng1 false\nout g1\n"), ParseError);
    EXPECT_THROW((void)circuit("g1 true\nout g1\ng2 true\n"), ParseError);
    try {
        (void)circuit("g1 true\n\ng2 nand g1 g1\nout g2\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3U);
    }
}

TEST(Circuit, TextRoundTrip)
{
    testing::Rng rng(31);
    for (int i = 0; i < 50; ++i) {
        const MonotoneCircuit c = testing::random_circuit(rng, 15);
        const MonotoneCircuit again = parse_circuit(to_text(c));
        EXPECT_EQ(to_text(again), to_text(c));
        EXPECT_EQ(eval_circuit(again), eval_circuit(c));
    }
}

TEST(Reduction, GadgetShape)
{
    const Reduction r = mcvp_to_ra(circuit("a true\nb false\nc and a b\nout c\n"));
    EXPECT_EQ(r.instance.size(), 3U);
    EXPECT_EQ(r.map.component[2], 0U);
    EXPECT_LE(r.instance.total_vertices(), r.vertex_constant * 3);
    for (const auto& c : r.instance.components()) {
        EXPECT_EQ(c.exits().size(), 2U);
        for (VertexId v : c.sources()) EXPECT_TRUE(c.parallel(v));
    }
    EXPECT_EQ(r.instance.component(0).vertex_count(), 9U);
}

TEST(Reduction, Examples)
{
    {
        const Reduction r = mcvp_to_ra(circuit("g1 true\nout g1\n"));
        EXPECT_TRUE(decide(r.instance, r.target).yes);
    }
    {
        const Reduction r = mcvp_to_ra(circuit("a true\nb false\nc and a b\nout c\n"));
        EXPECT_FALSE(decide(r.instance, r.target).yes);
        EXPECT_TRUE(decide(r.instance, *r.instance.component(0).find_vertex(r.map.bottom)).yes);
    }
}

TEST(Reduction, EveryGateAsMain)
{
    testing::Rng rng(37);
    for (int i = 0; i < 40; ++i) {
        const MonotoneCircuit c = testing::random_circuit(rng, 10);
        const auto values = eval_circuit(c);
        const Reduction r = mcvp_to_ra(c);
        for (std::size_t g = 0; g < c.gates.size(); ++g) {
            const Instance inst = reroot(r.instance, r.map.component[g]);
            const RunResult run_result = run(inst);
            ASSERT_TRUE(std::holds_alternative<Terminated>(run_result.outcome));
            const auto exit = std::get<Terminated>(run_result.outcome).exit;
            EXPECT_EQ(inst.component(0).name(exit), values[g] ? r.map.top : r.map.bottom);
            const auto w = walk(inst);
            EXPECT_EQ(w.classification, Classification::Complete);
        }
    }
}

}
}
