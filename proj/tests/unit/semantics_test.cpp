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
#include "oracles.hpp"
#include "rarrival/error.hpp"
#include "rarrival/flow_json.hpp"
#include "rarrival/semantics.hpp"

namespace rarrival {
namespace {

using testing::load_fixture;

TEST(Flip, Involution)
{
    const Instance inst = load_fixture("alternation.ra");
    const Component& c = inst.component(0);
    const VertexId o = *c.find_vertex("o");
    const VertexId w = *c.find_vertex("w");
    const SwitchPosition q0 = SwitchPosition::initial(c);

    const SwitchPosition q1 = flip(c, o, q0);
    EXPECT_TRUE(q1.get(c.source_slot(o)));
    EXPECT_FALSE(q1.get(c.source_slot(w)));
    EXPECT_EQ(flip(c, o, q1), q0);
    EXPECT_EQ(flip(c, w, flip(c, o, q0)), flip(c, o, flip(c, w, q0)));
    EXPECT_THROW((void)flip(c, *c.find_vertex("d"), q0), ContractViolation);
}

TEST(Step, ExitWithEmptyStackIsFixed)
{
    const Instance inst = load_fixture("alternation.ra");
    State s = initial_state(inst);
    s.vertex = *inst.component(0).find_vertex("d");
    EXPECT_EQ(step(inst, s), s);
}

TEST(Step, MutualCallPushes)
{
    const Instance inst = load_fixture("mutual.ra");
    const State s0 = initial_state(inst);
    const State s1 = step(inst, s0);
    EXPECT_TRUE(s1.stack.empty());
    EXPECT_EQ(inst.component(0).name(s1.vertex), "y1:o2");
    EXPECT_EQ(s1.position, flip(inst.component(0), s0.vertex, s0.position));

    const State s2 = step(inst, s1);
    ASSERT_EQ(s2.stack.size(), 1U);
    EXPECT_EQ(s2.stack[0].saved, s1.position);
    EXPECT_EQ(s2.component, 1U);
    EXPECT_EQ(inst.component(1).name(s2.vertex), "o2");
    EXPECT_TRUE(well_formed(inst, s2));
}

TEST(Step, RejectsIllFormedState)
{
    const Instance inst = load_fixture("mutual.ra");
    State s = initial_state(inst);
    s.stack.push_back({0, 0, SwitchPosition::initial(inst.component(0))});  // box y1 calls 2, not 1
    EXPECT_FALSE(well_formed(inst, s));
    EXPECT_THROW((void)step(inst, s), ContractViolation);
}

TEST(Step, AlternationVisitsOWOD)
{
    const Instance inst = load_fixture("alternation.ra");
    State s = initial_state(inst);
    std::vector<std::string> seen;
    for (int t = 0; t < 5; ++t) {
        seen.push_back(inst.component(0).name(s.vertex));
        s = step(inst, s);
    }
    EXPECT_EQ(seen, (std::vector<std::string>{"s", "o", "w", "o", "d"}));
}

TEST(Run, AlternationTerminates)
{
    const Instance inst = load_fixture("alternation.ra");
    const RunResult r = run(inst);
    ASSERT_TRUE(std::holds_alternative<Terminated>(r.outcome));
    const auto& t = std::get<Terminated>(r.outcome);
    EXPECT_EQ(inst.component(0).name(t.exit), "d");
    EXPECT_EQ(t.time, 4U);
}

TEST(Run, MutualBlowsUpAtDepthK)
{
    const Instance inst = load_fixture("mutual.ra");
    const RunResult r = run(inst);
    ASSERT_TRUE(std::holds_alternative<StackBlowup>(r.outcome));
    EXPECT_EQ(std::get<StackBlowup>(r.outcome).depth, inst.size());
    EXPECT_EQ(std::get<StackBlowup>(r.outcome).time, 4U);
}

TEST(Run, SelfLoopOverflows)
{
    const Instance inst = load_fixture("selfloop.ra");
    const RunResult r = run(inst);
    ASSERT_TRUE(std::holds_alternative<LoopOverflow>(r.outcome));
    const auto& o = std::get<LoopOverflow>(r.outcome);
    EXPECT_EQ(o.component, 0U);
    EXPECT_EQ(inst.component(0).edge_key(o.edge), "v->v");
    // |V| = 3 so N = 2^3 + 1; the count reaches N on the step into time 1 + N.
    EXPECT_EQ(r.profile.flow.at(0, o.edge), 9U);
    EXPECT_EQ(o.time, 10U);
}

TEST(Run, BudgetGivesInconclusive)
{
    const Instance inst = load_fixture("selfloop.ra");
    RunOptions opt;
    opt.max_steps = 3;
    const RunResult r = run(inst, opt);
    ASSERT_TRUE(std::holds_alternative<Inconclusive>(r.outcome));
    EXPECT_EQ(std::get<Inconclusive>(r.outcome).steps, 3U);
}

TEST(RunProfile, Examples)
{
    const Instance alt = load_fixture("alternation.ra");
    EXPECT_TRUE(run_profile(alt, 0).flow.is_zero());
    EXPECT_EQ(flow_to_string(alt, run_profile(alt, 3).flow), R"({"flows":{"1":{"o->w":1,"s->o":1,"w->o":1}}})");
    // Constant after termination.
    EXPECT_EQ(run_profile(alt, 100).flow, run_profile(alt, 4).flow);

    const Instance mutual = load_fixture("mutual.ra");
    const RunProfile p = run_profile(mutual, 2);
    EXPECT_EQ(flow_to_string(mutual, p.flow), R"({"flows":{"1":{"o1->y1:o2":1},"2":{}}})");
    EXPECT_EQ(p.first_entry[1], 2U);
    ASSERT_TRUE(p.canonical[1].has_value());
    EXPECT_EQ(p.canonical[1]->size(), 1U);
}

TEST(RunProfile, BeyondHorizonThrows)
{
    const Instance mutual = load_fixture("mutual.ra");
    try {
        (void)run_profile(mutual, 1000000);
        FAIL();
    } catch (const HorizonExceeded& e) {
        EXPECT_TRUE(std::holds_alternative<StackBlowup>(e.outcome()));
    }
}

TEST(RunProfile, IncrementalMatchesDefinition)
{
    testing::Rng rng(3);
    for (int i = 0; i < 150; ++i) {
        const Instance inst = testing::random_instance(rng);
        RunOptions opt;
        opt.max_steps = 300;
        std::vector<RunProfile> incremental;
        (void)run(inst, opt, [&](std::uint64_t, const State&, const RunProfile& p) { incremental.push_back(p); });
        for (std::uint64_t t = 0; t < incremental.size(); t += 1 + t / 8) {
            const RunProfile d = testing::definitional_profile(inst, t);
            ASSERT_EQ(d.flow, incremental[t].flow) << "instance " << i << " t " << t;
            EXPECT_EQ(d.first_entry, incremental[t].first_entry);
            EXPECT_EQ(d.exit_time, incremental[t].exit_time);
        }
    }
}

TEST(Hits, Alternation)
{
    const Instance inst = load_fixture("alternation.ra");
    const Component& c = inst.component(0);
    EXPECT_EQ(hits(inst, 0, *c.find_vertex("w")), HitAnswer::Yes);
    EXPECT_EQ(hits(inst, 0, *c.find_vertex("e")), HitAnswer::No);
    EXPECT_EQ(hits(inst, 0, c.entry()), HitAnswer::Yes);
}

TEST(Hits, CertifiesNonHittingAfterDetectors)
{
    const Instance mutual = load_fixture("mutual.ra");
    EXPECT_EQ(hits(mutual, 0, *mutual.component(0).find_vertex("d1")), HitAnswer::No);
    EXPECT_EQ(hits(mutual, 1, *mutual.component(1).find_vertex("o2")), HitAnswer::Yes);

    const Instance loop = load_fixture("selfloop.ra");
    EXPECT_EQ(hits(loop, 0, *loop.component(0).find_vertex("d")), HitAnswer::No);

    RunOptions tight;
    tight.max_steps = 2;
    EXPECT_EQ(hits(loop, 0, *loop.component(0).find_vertex("d"), tight), HitAnswer::Inconclusive);
}

TEST(Hits, AgreesWithLongSimulation)
{
    testing::Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const Instance inst = testing::random_instance(rng);
        std::vector<std::vector<bool>> reached(inst.size());
        for (const auto& c : inst.components()) reached[c.index()].assign(c.vertex_count(), false);
        State s = initial_state(inst);
        for (int t = 0; t < 100000; ++t) {
            reached[s.component][s.vertex] = true;
            advance(inst, s);
        }
        for (const auto& c : inst.components()) {
            for (VertexId v = 0; v < c.vertex_count(); ++v) {
                const HitAnswer h = hits(inst, c.index(), v);
                if (h == HitAnswer::Yes) EXPECT_TRUE(reached[c.index()][v]);
                if (h == HitAnswer::No) EXPECT_FALSE(reached[c.index()][v]) << "instance " << i;
            }
        }
    }
}

}
}
