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

#ifndef ENERCAL_CALIBRATOR_JSON_H_
#define ENERCAL_CALIBRATOR_JSON_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "enercal/calibrators.h"

namespace enercal {

// One JSON object per calibrator: {"kind": ..., "k": ..., <family fields>}.
// Numbers are written with 17 significant digits.
//
//   ts      t
//   energy  t_ts theta1 theta2 mu_correct sigma_correct mu_incorrect
//           sigma_incorrect t_min
//   hb      edges values
//   irova   maps: [{"breakpoints": [...], "values": [...]}, ...]
//   ets     t w
std::string ToJson(const Calibrator& calibrator);

// Throws FormatError on unknown kinds, missing fields or invalid values.
Calibrator CalibratorFromJson(std::string_view json);

void SaveCalibrator(const Calibrator& calibrator,
                    const std::filesystem::path& path);
Calibrator LoadCalibrator(const std::filesystem::path& path);

}  // namespace enercal

#endif  // ENERCAL_CALIBRATOR_JSON_H_
