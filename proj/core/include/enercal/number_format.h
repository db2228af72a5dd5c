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

#ifndef ENERCAL_NUMBER_FORMAT_H_
#define ENERCAL_NUMBER_FORMAT_H_

#include <string>
#include <string_view>

namespace enercal {

// "%.17g" formatting; round-trips every finite binary64 value.
std::string FormatDouble(double value);

// Parses a complete decimal number. Returns false on trailing characters,
// empty input or out-of-range values.
bool ParseDouble(std::string_view text, double& value);
bool ParseInt(std::string_view text, int& value);

}  // namespace enercal

#endif  // ENERCAL_NUMBER_FORMAT_H_
