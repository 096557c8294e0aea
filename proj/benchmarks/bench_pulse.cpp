// Copyright 2026 The hamamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "hamamp/pulse.hpp"

namespace {

using namespace hamamp;

void BM_SecondIntegrals(benchmark::State& state) {
    const auto p = build_pulse_family(PulseFamily::exsol1, std::vector<double>(static_cast<std::size_t>(state.range(0)), 0.8),
                                      1.0);
    for (auto _ : state) benchmark::DoNotOptimize(magnus_second_integrals(p));
}
BENCHMARK(BM_SecondIntegrals)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_PropagateSmooth(benchmark::State& state) {
    const auto h = QuadraticHamiltonian::harmonic(1, 0.5);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto pulse = amplifying_pulse(2.0, 1.0 / static_cast<double>(n));
    for (auto _ : state) benchmark::DoNotOptimize(propagate_smooth(h, pulse, n, 256));
}
BENCHMARK(BM_PropagateSmooth)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
