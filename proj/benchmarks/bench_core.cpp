// SPDX-License-Identifier: Apache-2.0
//
// dpis - simulation toolkit for dual-polarized RIS/FIS-aided SISO links
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

#include <benchmark/benchmark.h>

#include <cmath>

#include "dpis/mover.hpp"
#include "dpis/power.hpp"
#include "dpis/statistics.hpp"

namespace {

dpis::Scene make_scene(int n) {
    const double angle = 0.5235987755982988;
    return dpis::Scene(dpis::ArrayGeometry(n, 0.05), dpis::LinkGeometry(20.0, angle),
                       dpis::LinkGeometry(10.0, angle),
                       dpis::SignalConfig::from_frequency(5.9e9),
                       dpis::PolarizationConfig(0.2, dpis::Polarization::Vertical,
                                                dpis::Polarization::Horizontal));
}

void SteeringVector(benchmark::State& state) {
    const auto scene = make_scene(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto g = dpis::steering_vector(scene.array, scene.rx, scene.signal,
                                       dpis::SteeringRole::ToReceiver);
        benchmark::DoNotOptimize(g.entries.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(SteeringVector)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void ReceivedPowerDiagonal(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto scene = make_scene(n);
    const auto theta = dpis::dfis_matrix(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dpis::received_power(scene, theta).power_w);
    }
    state.SetComplexityN(n);
}
BENCHMARK(ReceivedPowerDiagonal)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void ReceivedPowerDense(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto scene = make_scene(n);
    const auto theta = dpis::bdfis_matrix(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dpis::received_power(scene, theta).power_w);
    }
    state.SetComplexityN(n);
}
BENCHMARK(ReceivedPowerDense)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BdrisConstruction(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto channels = dpis::build_channels(make_scene(n));
    for (auto _ : state) {
        auto theta = dpis::bdris_optimal(channels.rx, channels.tx);
        benchmark::DoNotOptimize(theta.entries.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(BdrisConstruction)->RangeMultiplier(4)->Range(16, 256)->Complexity();

void McMeanPower(benchmark::State& state) {
    const dpis::ChannelSampler sampler{dpis::SamplerKind::IidPhase, 42};
    for (auto _ : state) {
        auto estimate = dpis::mc_mean_power(dpis::SurfaceDesign::BDRIS,
                                            dpis::Scenario::OppositePol, 64, 0.2,
                                            state.range(0), sampler);
        benchmark::DoNotOptimize(estimate.mean_w);
    }
}
BENCHMARK(McMeanPower)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void FrequencyGridSearch(benchmark::State& state) {
    const auto scene = make_scene(64);
    const auto theta = dpis::dfis_matrix(64);
    const dpis::FrequencyBand band(5e9, 7e9, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto choice = dpis::grid_search_frequency(scene, theta, band);
        benchmark::DoNotOptimize(choice.achieved_power);
    }
}
BENCHMARK(FrequencyGridSearch)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
