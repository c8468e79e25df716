// SPDX-License-Identifier: Apache-2.0
//
// mcsim: mutual-coupling Monte Carlo simulator for dense receive arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mcsim/array.hpp"
#include "mcsim/montecarlo.hpp"
#include "mcsim/specfun.hpp"

#include <benchmark/benchmark.h>

using namespace mcsim;

static void BM_SineIntegral(benchmark::State &state)
{
    double x = 0.01;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(sine_integral(x));
        x = x < 1e4 ? x * 1.37 : 0.01;
    }
}
BENCHMARK(BM_SineIntegral);

static void BM_CosineIntegral(benchmark::State &state)
{
    double x = 0.01;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(cosine_integral(x));
        x = x < 1e4 ? x * 1.37 : 0.01;
    }
}
BENCHMARK(BM_CosineIntegral);

static void BM_ImpedanceMatrix(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const double lambda = 299792458.0 / 30e9;
    const auto geom = ArrayGeometry::from_aperture(n, 0.5, lambda);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_impedance_matrix(geom, CouplingModel::HalfWaveDipole, {73.0, 42.5}));
}
BENCHMARK(BM_ImpedanceMatrix)->Arg(16)->Arg(128)->Arg(256);

static void BM_SimulationPoint(benchmark::State &state)
{
    ScenarioConfig cfg;
    cfg.element_count = static_cast<std::size_t>(state.range(0));
    const Scene scene = draw_scene(cfg, 1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(SimulationPoint(cfg, scene));
}
BENCHMARK(BM_SimulationPoint)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_Detector(benchmark::State &state)
{
    ScenarioConfig cfg;
    cfg.element_count = static_cast<std::size_t>(state.range(0));
    const SimulationPoint point(cfg, draw_scene(cfg, 1, 0));
    const Detector det = all_detectors()[static_cast<std::size_t>(state.range(1))];
    RandomStream rng(3);
    std::vector<Observation> obs;
    for (int i = 0; i < 64; ++i)
        obs.push_back(point.observe(draw_trial(rng, 4, point.scene().size(), cfg.element_count), false));
    std::size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(point.decide(obs[i++ % obs.size()], det));
    state.SetLabel(label(det));
}
BENCHMARK(BM_Detector)->ArgsProduct({{16, 128}, {0, 1, 2, 3, 4, 5}})->Unit(benchmark::kMicrosecond);

static void BM_TrialThroughput(benchmark::State &state)
{
    ScenarioConfig cfg;
    const SimulationPoint point(cfg, draw_scene(cfg, 1, 0));
    const auto dets = all_detectors();
    const auto trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_ser(point, dets, trials, 1, 0, 1));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * trials));
}
BENCHMARK(BM_TrialThroughput)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
