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

#include "cli/bench.h"

#include <numeric>
#include <optional>

#include "enercal/error.h"
#include "enercal/metrics.h"
#include "enercal/number_format.h"

namespace enercal::cli {
namespace {

// Seeds of one benchmark cell are spaced so that the six severity seeds and
// the two OOD seeds of neighbouring cells never collide.
constexpr uint64_t kCellStride = 1000;
constexpr uint64_t kOodTuneOffset = 500;
constexpr uint64_t kOodTestOffset = 600;

double TestEce(const Calibrator& calibrator, const LogitDataset& ds,
               int bins) {
  const auto predictions = ApplyCalibrator(calibrator, ds);
  return Ece(BinPredictions(predictions, ds.labels(), bins), ds.size());
}

LogitDataset Semantic(const ShiftScenario& base, size_t n, uint64_t seed) {
  ShiftScenario scenario = base;
  scenario.kind = ShiftKind::kSemantic;
  scenario.severity = 0;
  scenario.n = n;
  scenario.seed = seed;
  return Generate(scenario);
}

}  // namespace

void BenchConfig::Validate() const {
  if (seeds < 1) throw ArgumentError("--seeds must be at least 1");
  if (bins < 1) throw ArgumentError("--bins must be at least 1");
  if (methods.empty()) throw ArgumentError("no methods requested");
  for (const std::string& m : methods) {
    if (m != "none" && !IsCalibratorKind(m)) {
      throw ArgumentError("unknown method '" + m + "'");
    }
  }
  ShiftScenario scenario = ScenarioForSeed(0);
  scenario.Validate();
  if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
    throw ArgumentError("--val-fraction must lie in (0, 1)");
  }
}

ShiftScenario BenchConfig::ScenarioForSeed(int seed_index) const {
  ShiftScenario scenario;
  scenario.k = k;
  scenario.n = n;
  scenario.margin = margin;
  scenario.noise = noise;
  scenario.overconfidence = overconfidence;
  scenario.kind = ShiftKind::kId;
  scenario.seed = base_seed + kCellStride * static_cast<uint64_t>(seed_index);
  return scenario;
}

double BenchResult::MeanEce(size_t method_index, int severity) const {
  double sum = 0.0;
  for (const SeedRun& run : seeds) {
    sum += run.methods[method_index].ece[static_cast<size_t>(severity)];
  }
  return sum / static_cast<double>(seeds.size());
}

double BenchResult::MeanSeverityAveragedEce(size_t method_index) const {
  double sum = 0.0;
  for (int s = 0; s < kSeverityLevels; ++s) sum += MeanEce(method_index, s);
  return sum / kSeverityLevels;
}

double BenchResult::MeanOodConfidence(size_t method_index) const {
  double sum = 0.0;
  for (const SeedRun& run : seeds) {
    sum += run.methods[method_index].ood_confidence;
  }
  return sum / static_cast<double>(seeds.size());
}

BenchResult RunBench(const BenchConfig& config) {
  config.Validate();
  BenchResult result{config, {}};
  for (int i = 0; i < config.seeds; ++i) {
    const ShiftScenario base = config.ScenarioForSeed(i);
    const auto suite = SeveritySuite(base);
    auto [val, test] = Split(suite[0], config.val_fraction, base.seed);
    const size_t ood_n = config.ood_n > 0 ? config.ood_n : val.size();
    LogitDataset ood_tune = Semantic(base, ood_n, base.seed + kOodTuneOffset);
    const LogitDataset ood_test =
        Semantic(base, config.n, base.seed + kOodTestOffset);

    SeedRun run{base.seed, val, ood_tune, {}};
    for (const std::string& method : config.methods) {
      MethodRun m{method == "none"
                      ? Calibrator{TemperatureParams{config.k, 1.0}}
                      : FitCalibrator(method, val, &ood_tune, config.bins),
                  {},
                  0.0};
      for (int s = 0; s < kSeverityLevels; ++s) {
        m.ece[static_cast<size_t>(s)] =
            TestEce(m.calibrator, s == 0 ? test : suite[static_cast<size_t>(s)],
                    config.bins);
      }
      m.ood_confidence = MeanConfidence(ApplyCalibrator(m.calibrator, ood_test));
      run.methods.push_back(std::move(m));
    }
    result.seeds.push_back(std::move(run));
  }
  return result;
}

std::string FormatBenchCsv(const BenchResult& result) {
  std::string out = "method,metric,value\n";
  auto row = [&](const std::string& method, const std::string& metric,
                 double value) {
    out += method + "," + metric + "," + FormatDouble(value) + "\n";
  };
  for (size_t m = 0; m < result.config.methods.size(); ++m) {
    const std::string& method = result.config.methods[m];
    for (int s = 0; s < kSeverityLevels; ++s) {
      row(method, "ece_s" + std::to_string(s), result.MeanEce(m, s));
    }
    row(method, "ece_avg", result.MeanSeverityAveragedEce(m));
    row(method, "ood_confidence", result.MeanOodConfidence(m));
  }
  return out;
}

}  // namespace enercal::cli
