// Copyright 2026 The gaussent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <benchmark/benchmark.h>

#include "gaussent/protocols.hpp"
#include "gaussent/symplectic.hpp"

namespace gaussent {
namespace {

void BM_NoGoMonteCarlo(benchmark::State& state) {
  const Matrix g = two_mode_squeezed_cov(0.5);
  const int trials = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(no_go_monte_carlo(g, trials, 1));
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_NoGoMonteCarlo)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_NonGaussianFirstStep(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nongaussian_first_step(0.5, 0.6, cutoff));
}
BENCHMARK(BM_NonGaussianFirstStep)->Arg(10)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_GaussifyStep(benchmark::State& state) {
  const auto rho = nongaussian_first_step(0.5, 0.6, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gaussify_step(rho));
}
BENCHMARK(BM_GaussifyStep)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_PassiveMax(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Matrix g = Matrix::Identity(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    g(2 * k, 2 * k) = std::exp(0.2 * (k + 1));
    g(2 * k + 1, 2 * k + 1) = std::exp(-0.2 * (k + 1));
  }
  for (auto _ : state) benchmark::DoNotOptimize(passive_max_entanglement(g));
}
BENCHMARK(BM_PassiveMax)->RangeMultiplier(2)->Range(2, 16);

}  // namespace
}  // namespace gaussent

BENCHMARK_MAIN();
