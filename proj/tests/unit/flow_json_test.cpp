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
#include "rarrival/flow_json.hpp"
#include "rarrival/semantics.hpp"

namespace rarrival {
namespace {

TEST(FlowJson, OmitsZerosInCanonicalOrder)
{
    const Instance inst = testing::load_fixture("mutual.ra");
    const Flow x({{1, 0, 1}, {0, 0, 0}});
    EXPECT_EQ(flow_to_string(inst, x), R"({"flows":{"1":{"o1->y1:o2":1,"y1:o2->y1:d2":1},"2":{}}})");
}

TEST(FlowJson, Errors)
{
    const Instance inst = testing::load_fixture("mutual.ra");
    EXPECT_THROW((void)parse_flow(inst, "{"), ParseError);
    EXPECT_THROW((void)parse_flow(inst, R"({"flow":{}})"), ParseError);
    EXPECT_THROW((void)parse_flow(inst, R"({"flows":{"3":{}}})"), ParseError);
    EXPECT_THROW((void)parse_flow(inst, R"({"flows":{"1":{"o1->d1":1}}})"), ParseError);
    EXPECT_THROW((void)parse_flow(inst, R"({"flows":{"1":{"o1->y1:o2":-1}}})"), ParseError);
    EXPECT_THROW((void)parse_flow(inst, R"({"flows":{"1":{"o1->y1:o2":1.5}}})"), ParseError);
    EXPECT_TRUE(parse_flow(inst, R"({"flows":{}})").is_zero());
}

TEST(FlowJson, RoundTripProfiles)
{
    testing::Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        const Instance inst = testing::random_instance(rng);
        RunOptions opt;
        opt.max_steps = 200;
        const RunResult r = run(inst, opt);
        EXPECT_EQ(parse_flow(inst, flow_to_string(inst, r.profile.flow)), r.profile.flow);
    }
}

}
}
