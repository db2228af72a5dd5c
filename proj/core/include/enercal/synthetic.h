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

#ifndef ENERCAL_SYNTHETIC_H_
#define ENERCAL_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "enercal/dataset.h"

namespace enercal {

enum class ShiftKind { kId, kCovariate, kSemantic };

std::string_view ShiftKindName(ShiftKind kind);
// Accepts "id", "covariate" and "semantic".
ShiftKind ParseShiftKind(std::string_view name);

inline constexpr int kMaxSeverity = 5;

// Synthetic classifier outputs. A labeled row is
//
//   z = overconfidence * (margin * onehot(y) + eps),  eps ~ N(0, s^2 I)
//
// with s = noise * (1 + 0.5 * severity); semantic rows drop the margin term
// and carry the OOD label.
struct ShiftScenario {
  int k = 10;
  size_t n = 1000;
  double margin = 4.0;
  double noise = 1.0;
  double overconfidence = 3.0;
  int severity = 0;
  ShiftKind kind = ShiftKind::kId;
  uint64_t seed = 0;

  // Throws ArgumentError on out-of-range fields. kind=id requires
  // severity 0.
  void Validate() const;
  double NoiseScale() const;
};

LogitDataset Generate(const ShiftScenario& scenario);

// Severities 0..5 of kind=covariate; severity s uses seed base.seed + s.
std::vector<LogitDataset> SeveritySuite(const ShiftScenario& base);

}  // namespace enercal

#endif  // ENERCAL_SYNTHETIC_H_
