/*
* Copyright (C) 2026 episdyn contributors
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
// Serial reference vs OpenMP kernels: certification grid scans and trajectory ensembles.
#include "episdyn/certify.hpp"
#include "episdyn/integrate.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace
{

using namespace episdyn;

Params canonical()
{
    Params p;
    p.beta = 0.5;
    p.alpha = 2.0;
    p.mu2 = 0.1;
    p.mu3 = 0.05;
    p.gamma = 0.15;
    return p;
}

template <Execution Exec>
void scan(benchmark::State& state)
{
    ScanOptions opts;
    opts.resolution = static_cast<int>(state.range(0));
    const auto q = static_cast<ScanQuantity>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(certify_grid(q, canonical(), opts, Exec));
    }
    state.SetItemsProcessed(state.iterations() * opts.resolution * (opts.resolution + 1) / 2);
}

template <Execution Exec>
void ensemble(benchmark::State& state)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<PlanarState> x0s;
    while (x0s.size() < static_cast<std::size_t>(state.range(0))) {
        const double s = u(rng);
        const double i = u(rng);
        if (s + i <= 1.0) {
            x0s.push_back({s, i});
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_ensemble(x0s, canonical(), {}, Exec));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void scan_args(benchmark::internal::Benchmark* b)
{
    for (int q : {0, 2}) {
        for (int res : {200, 400}) {
            b->Args({res, q});
        }
    }
    b->ArgNames({"res", "quantity"})->Unit(benchmark::kMillisecond);
}

} // namespace

BENCHMARK(scan<Execution::Serial>)->Apply(scan_args);
BENCHMARK(scan<Execution::Parallel>)->Apply(scan_args)->UseRealTime();
BENCHMARK(ensemble<Execution::Serial>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(ensemble<Execution::Parallel>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
