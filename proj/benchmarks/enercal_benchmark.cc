// Copyright 2026 The enercal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <vector>

#include "benchmark/benchmark.h"
#include "enercal/calibrators.h"
#include "enercal/metrics.h"
#include "enercal/scores.h"
#include "enercal/synthetic.h"

namespace enercal {
namespace {

LogitDataset Scenario(size_t n, ShiftKind kind, uint64_t seed) {
  ShiftScenario sc;
  sc.n = n;
  sc.kind = kind;
  sc.seed = seed;
  return Generate(sc);
}

void BM_Generate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Scenario(static_cast<size_t>(state.range(0)), ShiftKind::kId, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(1000)->Arg(10000);

void BM_FitTemperature(benchmark::State& state) {
  const LogitDataset val =
      Scenario(static_cast<size_t>(state.range(0)), ShiftKind::kId, 2);
  for (auto _ : state) benchmark::DoNotOptimize(FitTemperature(val));
}
BENCHMARK(BM_FitTemperature)->Arg(2500);

void BM_FitEnergyCalibrator(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  const LogitDataset val = Scenario(n, ShiftKind::kId, 3);
  const LogitDataset ood = Scenario(n, ShiftKind::kSemantic, 4);
  const TemperatureParams ts = FitTemperature(val);
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitEnergyCalibrator(val, ood, ts));
  }
}
BENCHMARK(BM_FitEnergyCalibrator)->Arg(500)->Arg(2500);

void BM_Ece(benchmark::State& state) {
  const LogitDataset ds =
      Scenario(static_cast<size_t>(state.range(0)), ShiftKind::kId, 5);
  const auto predictions = ApplyCalibrator(TemperatureParams{ds.k(), 1.0}, ds);
  for (auto _ : state) {
    const BinStats bins = BinPredictions(predictions, ds.labels(), kDefaultBins);
    benchmark::DoNotOptimize(Ece(bins, ds.size()));
  }
}
BENCHMARK(BM_Ece)->Arg(10000);

void BM_Auroc(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  const LogitDataset id = Scenario(n, ShiftKind::kId, 6);
  const LogitDataset ood = Scenario(n, ShiftKind::kSemantic, 7);
  OodScores scores;
  for (size_t i = 0; i < n; ++i) {
    scores.in.push_back(-Energy(id.row(i)).value);
    scores.out.push_back(-Energy(ood.row(i)).value);
  }
  for (auto _ : state) benchmark::DoNotOptimize(Auroc(scores));
}
BENCHMARK(BM_Auroc)->Arg(10000);

}  // namespace
}  // namespace enercal

// The packaged benchmark_main archive carries LTO bytecode from another
// compiler release, so the entry point is defined here.
BENCHMARK_MAIN();
