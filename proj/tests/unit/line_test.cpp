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

#include <algorithm>

#include "generators.hpp"
#include "oracles.hpp"
#include "rarrival/error.hpp"
#include "rarrival/flow_json.hpp"
#include "rarrival/line.hpp"

namespace rarrival {
namespace {

using testing::load_fixture;

TEST(Units, AddSubtract)
{
    const Instance inst = load_fixture("alternation.ra");
    const Flow z = Flow::zero(inst);
    const Flow one = add(z, {0, 1});
    EXPECT_EQ(val(one), 1U);
    EXPECT_EQ(subtract(one, {0, 1}), z);
    EXPECT_THROW((void)subtract(z, {0, 1}), ContractViolation);
}

TEST(Adv, Examples)
{
    const Instance alt = load_fixture("alternation.ra");
    const FlowBounds b = FlowBounds::of(alt, {});
    const Component& c = alt.component(0);
    const Flow a0 = adv(alt, Flow::zero(alt), b);
    EXPECT_EQ(flow_to_string(alt, a0), R"({"flows":{"1":{"s->o":1}}})");
    const Flow a1 = adv(alt, a0, b);
    EXPECT_EQ(a1.at(0, *c.find_edge("o->w")), 1U);

    // Identity on garbage and on finished flows.
    const Flow garbage = parse_flow(alt, R"({"flows":{"1":{"o->d":3}}})");
    EXPECT_EQ(adv(alt, garbage, b), garbage);
    const Flow done = walk(alt).flow;
    EXPECT_EQ(adv(alt, done, b), done);

    const Instance mutual = load_fixture("mutual.ra");
    const Flow lasso({{1, 0, 0}, {1, 0, 0}});
    EXPECT_EQ(adv(mutual, lasso, FlowBounds::of(mutual, {})), lasso);
}

TEST(Prev, Examples)
{
    const Instance alt = load_fixture("alternation.ra");
    const FlowBounds b = FlowBounds::of(alt, {});
    EXPECT_TRUE(prev(alt, Flow::zero(alt), b).is_zero());
    const Flow z = Flow::zero(alt);
    EXPECT_EQ(prev(alt, adv(alt, z, b), b), z);

    const Flow done = walk(alt).flow;
    const Flow before = prev(alt, done, b);
    EXPECT_EQ(flow_to_string(alt, before), R"({"flows":{"1":{"o->w":1,"s->o":1,"w->o":1}}})");

    const Instance mutual = load_fixture("mutual.ra");
    const FlowBounds mb = FlowBounds::of(mutual, {});
    const Flow lasso({{1, 0, 0}, {1, 0, 0}});
    EXPECT_EQ(prev(mutual, lasso, mb), Flow({{1, 0, 0}, {0, 0, 0}}));
}

TEST(Oracles, CandidateCounts)
{
    const Instance alt = load_fixture("alternation.ra");
    const FlowBounds b = FlowBounds::of(alt, {});
    EXPECT_TRUE(prev_candidates(alt, Flow::zero(alt), b).empty());
    EXPECT_TRUE(adv_candidates(alt, walk(alt).flow, b).empty());
    EXPECT_EQ(adv_oracle(alt, Flow::zero(alt), b), adv(alt, Flow::zero(alt), b));
    EXPECT_THROW((void)adv_oracle(alt, walk(alt).flow, b), InternalInvariantError);
}

TEST(Walk, Fixtures)
{
    const Instance alt = load_fixture("alternation.ra");
    const FinishedWitness w = walk(alt);
    EXPECT_EQ(w.classification, Classification::Complete);
    ASSERT_TRUE(w.exit.has_value());
    EXPECT_EQ(alt.component(0).name(*w.exit), "d");
    EXPECT_EQ(w.value, 4U);
    EXPECT_EQ(w.flow, run(alt).profile.flow);

    const Instance mutual = load_fixture("mutual.ra");
    const FinishedWitness m = walk(mutual);
    EXPECT_EQ(m.classification, Classification::Lassoed);
    EXPECT_EQ(m.flow, Flow({{1, 0, 0}, {1, 0, 0}}));
    EXPECT_EQ(m.value, 2U);

    const Instance loop = load_fixture("selfloop.ra");
    const FinishedWitness s = walk(loop);
    EXPECT_EQ(s.classification, Classification::JustOverflowing);
    EXPECT_EQ(s.flow.at(0, *loop.component(0).find_edge("v->v")), 9U);
}

TEST(Walk, ReportsCheckpoints)
{
    const Instance loop = load_fixture("selfloop.ra");
    std::vector<WalkCheckpoint> seen;
    (void)walk(loop, OverflowPolicy::parse("const:16"), [&](const WalkCheckpoint& c) { seen.push_back(c); });
    ASSERT_EQ(seen.size(), 2U);
    EXPECT_EQ(seen[1].steps, kCheckpointInterval);
    EXPECT_EQ(seen[1].value, kCheckpointInterval);
}

TEST(Decide, Fixtures)
{
    const Instance alt = load_fixture("alternation.ra");
    const Component& c = alt.component(0);
    EXPECT_TRUE(decide(alt, *c.find_vertex("d")).yes);
    EXPECT_FALSE(decide(alt, *c.find_vertex("e")).yes);
    EXPECT_THROW((void)decide(alt, *c.find_vertex("o")), ContractViolation);

    const Instance mutual = load_fixture("mutual.ra");
    EXPECT_FALSE(decide(mutual, *mutual.component(0).find_vertex("d1")).yes);
}

TEST(VerifyWitness, Examples)
{
    const Instance alt = load_fixture("alternation.ra");
    const FlowBounds b = FlowBounds::of(alt, {});
    const FinishedWitness w = walk(alt);
    EXPECT_TRUE(verify_witness(alt, w.flow, {Claim::Kind::Terminates, *w.exit}, b).accepted);
    EXPECT_FALSE(verify_witness(alt, w.flow, {Claim::Kind::Diverges, kNone}, b).accepted);
    const auto other = verify_witness(alt, w.flow, {Claim::Kind::Terminates, *alt.component(0).find_vertex("e")}, b);
    EXPECT_FALSE(other.accepted);

    const Instance mutual = load_fixture("mutual.ra");
    const FlowBounds mb = FlowBounds::of(mutual, {});
    const VertexId d1 = *mutual.component(0).find_vertex("d1");
    const auto bad = verify_witness(mutual, Flow({{1, 1, 1}, {1, 1, 1}}), {Claim::Kind::Terminates, d1}, mb);
    EXPECT_FALSE(bad.accepted);
    EXPECT_EQ(bad.reason, "not run-like: completed-call cycle");
    EXPECT_TRUE(verify_witness(mutual, walk(mutual).flow, {Claim::Kind::Diverges, kNone}, mb).accepted);

    const Instance loop = load_fixture("selfloop.ra");
    const FlowBounds lb = FlowBounds::of(loop, {});
    Flow big = walk(loop).flow;
    big.at(0, 1) = lb.max + 1;
    EXPECT_NE(verify_witness(loop, big, {Claim::Kind::Diverges, kNone}, lb).reason.find("exceeds N"),
              std::string::npos);
}

TEST(VerifyWitness, PerturbationsRejected)
{
    testing::Rng rng(23);
    for (int i = 0; i < 60; ++i) {
        const Instance inst = testing::random_instance(rng);
        const FlowBounds b = FlowBounds::of(inst, {});
        const FinishedWitness w = walk(inst);
        const Claim claim = w.exit ? Claim{Claim::Kind::Terminates, *w.exit} : Claim{Claim::Kind::Diverges, kNone};
        ASSERT_TRUE(verify_witness(inst, w.flow, claim, b).accepted);
        for (const auto& c : inst.components()) {
            for (EdgeId e = 0; e < c.dimension(); ++e) {
                EXPECT_FALSE(verify_witness(inst, add(w.flow, {c.index(), e}), claim, b).accepted);
                if (w.flow.at(c.index(), e) > 0)
                    EXPECT_FALSE(verify_witness(inst, subtract(w.flow, {c.index(), e}), claim, b).accepted);
            }
        }
    }
}

}
}
