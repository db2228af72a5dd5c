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

#ifndef ENERCAL_TOOLS_CLI_BENCH_H_
#define ENERCAL_TOOLS_CLI_BENCH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "enercal/calibrators.h"
#include "enercal/dataset.h"
#include "enercal/synthetic.h"

namespace enercal::cli {

// Severity benchmark over synthetic data. For every seed:
//   * a covariate severity suite 0..5 is generated;
//   * severity 0 is split into a validation part and a test part;
//   * a tuning semantic-OOD set (used only by "energy") and a held-out
//     semantic-OOD test set are generated with their own seeds;
//   * every method is fitted on the validation part and scored on the
//     severity-0 test part and the full severity 1..5 sets.
struct BenchConfig {
  int k = 10;
  size_t n = 5000;
  double margin = 4.0;
  double noise = 1.0;
  double overconfidence = 3.0;
  int seeds = 5;
  uint64_t base_seed = 1;
  // "none" (uncalibrated) or any calibrator kind.
  std::vector<std::string> methods = {"ts", "energy"};
  double val_fraction = 0.5;
  // 0 means "same size as the validation part".
  size_t ood_n = 0;
  int bins = 15;

  // Throws ArgumentError on bad values or unknown method tokens.
  void Validate() const;
  ShiftScenario ScenarioForSeed(int seed_index) const;
};

inline constexpr int kSeverityLevels = kMaxSeverity + 1;

struct MethodRun {
  Calibrator calibrator;
  std::array<double, kSeverityLevels> ece{};
  double ood_confidence = 0.0;
};

struct SeedRun {
  uint64_t seed = 0;
  LogitDataset val;
  LogitDataset ood_tune;
  std::vector<MethodRun> methods;  // parallel to BenchConfig::methods
};

struct BenchResult {
  BenchConfig config;
  std::vector<SeedRun> seeds;

  // Seed-averaged values for methods[method_index].
  double MeanEce(size_t method_index, int severity) const;
  double MeanSeverityAveragedEce(size_t method_index) const;
  double MeanOodConfidence(size_t method_index) const;
};

BenchResult RunBench(const BenchConfig& config);

// `method,metric,value` rows: ece_s0..ece_s5, ece_avg, ood_confidence.
std::string FormatBenchCsv(const BenchResult& result);

}  // namespace enercal::cli

#endif  // ENERCAL_TOOLS_CLI_BENCH_H_
