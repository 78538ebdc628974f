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

#include <benchmark/benchmark.h>

#include <vector>

#include "generators.hpp"
#include "rarrival/flow.hpp"
#include "rarrival/line.hpp"
#include "rarrival/reduce.hpp"
#include "rarrival/semantics.hpp"
#include "rarrival/ueopl.hpp"

namespace {

using namespace rarrival;

std::vector<Instance> instances(std::size_t vertices, std::size_t count = 32)
{
    testing::Rng rng(7 + vertices);
    testing::GenOptions opt;
    opt.min_components = 2;
    opt.max_components = 3;
    opt.max_vertices = vertices;
    opt.fill = true;
    std::vector<Instance> out;
    while (out.size() < count) out.push_back(testing::random_instance(rng, opt));
    return out;
}

void BM_Run(benchmark::State& state)
{
    const auto corpus = instances(static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run(corpus[i++ % corpus.size()]));
}
BENCHMARK(BM_Run)->Arg(4)->Arg(8)->Arg(16);

void BM_Walk(benchmark::State& state)
{
    const auto corpus = instances(static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(walk(corpus[i++ % corpus.size()]));
}
BENCHMARK(BM_Walk)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_VerifyWitness(benchmark::State& state)
{
    struct Case
    {
        Instance instance;
        FinishedWitness witness;
        FlowBounds bounds;
    };
    std::vector<Case> cases;
    for (auto& inst : instances(static_cast<std::size_t>(state.range(0)), 8)) {
        FinishedWitness w = walk(inst);
        const FlowBounds b = FlowBounds::of(inst, {});
        cases.push_back({std::move(inst), std::move(w), b});
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const Case& c = cases[i++ % cases.size()];
        benchmark::DoNotOptimize(verify_run_like(c.instance, c.witness.flow, c.bounds));
    }
}
BENCHMARK(BM_VerifyWitness)->Arg(4)->Arg(8)->Arg(16);

void BM_UeoplSuccessor(benchmark::State& state)
{
    const auto corpus = instances(6, 1);
    const Ueopl u(corpus.front(), {});
    Bits x(u.encoding().size(), false);
    for (auto _ : state) {
        Bits next = u.successor(x);
        x = next == x ? Bits(x.size(), false) : std::move(next);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_UeoplSuccessor);

void BM_McvpReduction(benchmark::State& state)
{
    testing::Rng rng(11);
    const MonotoneCircuit c = testing::random_circuit(rng, static_cast<std::size_t>(state.range(0)));
    const Reduction r = mcvp_to_ra(c);
    const VertexId top = *r.instance.component(0).find_vertex(r.map.top);
    for (auto _ : state) benchmark::DoNotOptimize(decide(r.instance, top));
}
BENCHMARK(BM_McvpReduction)->Arg(8)->Arg(32)->Arg(128);

}

BENCHMARK_MAIN();
