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

#include "enercal/synthetic.h"

#include <cmath>
#include <string>

#include "enercal/error.h"
#include "enercal/random.h"

namespace enercal {

std::string_view ShiftKindName(ShiftKind kind) {
  switch (kind) {
    case ShiftKind::kId:
      return "id";
    case ShiftKind::kCovariate:
      return "covariate";
    case ShiftKind::kSemantic:
      return "semantic";
  }
  return "";
}

ShiftKind ParseShiftKind(std::string_view name) {
  if (name == "id") return ShiftKind::kId;
  if (name == "covariate") return ShiftKind::kCovariate;
  if (name == "semantic") return ShiftKind::kSemantic;
  throw ArgumentError("unknown shift kind '" + std::string(name) + "'");
}

void ShiftScenario::Validate() const {
  if (k < 2) throw ArgumentError("k must be at least 2");
  if (n < 1) throw ArgumentError("n must be at least 1");
  if (!(margin > 0.0) || !std::isfinite(margin)) {
    throw ArgumentError("margin must be positive");
  }
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw ArgumentError("noise must be non-negative");
  }
  if (!(overconfidence >= 1.0) || !std::isfinite(overconfidence)) {
    throw ArgumentError("overconfidence must be at least 1");
  }
  if (severity < 0 || severity > kMaxSeverity) {
    throw ArgumentError("severity must lie in 0..5");
  }
  if (kind == ShiftKind::kId && severity != 0) {
    throw ArgumentError("kind=id requires severity 0");
  }
}

double ShiftScenario::NoiseScale() const {
  return noise * (1.0 + 0.5 * severity);
}

LogitDataset Generate(const ShiftScenario& scenario) {
  scenario.Validate();
  const auto k = static_cast<size_t>(scenario.k);
  const double sigma = scenario.NoiseScale();
  const bool semantic = scenario.kind == ShiftKind::kSemantic;
  SplitMix64 rng(scenario.seed);

  std::vector<double> logits;
  std::vector<int> labels;
  logits.reserve(scenario.n * k);
  labels.reserve(scenario.n);
  for (size_t i = 0; i < scenario.n; ++i) {
    const int y = semantic ? kOodLabel : static_cast<int>(rng.NextBelow(k));
    for (size_t c = 0; c < k; ++c) {
      double z = sigma * rng.NextNormal();
      if (static_cast<int>(c) == y) z += scenario.margin;
      logits.push_back(scenario.overconfidence * z);
    }
    labels.push_back(y);
  }
  return LogitDataset(scenario.k, std::move(logits), std::move(labels));
}

std::vector<LogitDataset> SeveritySuite(const ShiftScenario& base) {
  std::vector<LogitDataset> suite;
  for (int s = 0; s <= kMaxSeverity; ++s) {
    ShiftScenario scenario = base;
    scenario.kind = ShiftKind::kCovariate;
    scenario.severity = s;
    scenario.seed = base.seed + static_cast<uint64_t>(s);
    suite.push_back(Generate(scenario));
  }
  return suite;
}

}  // namespace enercal
