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

#include <numbers>

#include "hamamp/fock_jc.hpp"

namespace {

using namespace hamamp;

JcParameters params(double r) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return JcParameters{two_pi * 2.5, two_pi * 15.0, two_pi * 0.05, r};
}

// 1000 bang-bang cycles (2 ns at 1 ps slices), including the cycle setup.
void BM_SwapEvolution(benchmark::State& state) {
    const FockSystem sys(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(swap_probability_evolution(sys, params(0.4), 2.0, 1e-3, 2));
}
BENCHMARK(BM_SwapEvolution)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_SqueezeOperator(benchmark::State& state) {
    const FockSystem sys(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(squeeze_truncation_error(sys, 0.5, 1));
}
BENCHMARK(BM_SqueezeOperator)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

}  // namespace
