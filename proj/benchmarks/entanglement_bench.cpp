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

#include <string>

#include <benchmark/benchmark.h>

#include "gaussent/entanglement.hpp"
#include "gaussent/symplectic.hpp"

namespace gaussent {
namespace {

void BM_LogNegativityTms(benchmark::State& state) {
  const Matrix g = two_mode_squeezed_cov(0.5);
  const auto p = ModePartition::split(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(log_negativity_gaussian(g, p));
}
BENCHMARK(BM_LogNegativityTms);

void BM_PptVerdictPairs(benchmark::State& state) {
  const int pairs = static_cast<int>(state.range(0));
  Matrix g = Matrix::Identity(4 * pairs, 4 * pairs);
  for (int k = 0; k < pairs; ++k) g.block(4 * k, 4 * k, 4, 4) = two_mode_squeezed_cov(0.1 * (k + 1));
  // Pair k occupies modes 2k and 2k+1; party A takes the even modes.
  std::string labels;
  for (int k = 0; k < pairs; ++k) labels += "AB";
  const auto p = ModePartition::parse(labels);
  for (auto _ : state) benchmark::DoNotOptimize(ppt_verdict(g, p));
}
BENCHMARK(BM_PptVerdictPairs)->RangeMultiplier(2)->Range(1, 16);

}  // namespace
}  // namespace gaussent

BENCHMARK_MAIN();
