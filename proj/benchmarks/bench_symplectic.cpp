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

#include <random>

#include "hamamp/averaging.hpp"
#include "hamamp/symplectic.hpp"

namespace {

using namespace hamamp;

QuadraticHamiltonian random_hamiltonian(std::size_t modes) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto n = static_cast<Eigen::Index>(2 * modes);
    Matrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) a(i, j) = a(j, i) = u(rng);
    }
    return QuadraticHamiltonian(a);
}

void BM_SymplExp(benchmark::State& state) {
    const auto g = build_generator(random_hamiltonian(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(sympl_exp(g, 0.7));
}
BENCHMARK(BM_SymplExp)->Arg(1)->Arg(2)->Arg(6)->Arg(16);

void BM_TrotterSequence(benchmark::State& state) {
    const auto h = QuadraticHamiltonian::harmonic(1, 0.5);
    const auto ops = build_ha_set(1, all_modes(1), 0.65847894846240835);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(trotter_sequence(h, ops, 1.0, n));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TrotterSequence)->RangeMultiplier(10)->Range(10, 10000)->Complexity();

void BM_AverageMap(benchmark::State& state) {
    const auto modes = static_cast<std::size_t>(state.range(0));
    const auto h = random_hamiltonian(modes);
    const auto ops = build_ha_dd_set(Bipartition(modes, {0}), 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(average_map(h, ops));
}
BENCHMARK(BM_AverageMap)->Arg(2)->Arg(8)->Arg(32);

}  // namespace
