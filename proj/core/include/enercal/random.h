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

#ifndef ENERCAL_RANDOM_H_
#define ENERCAL_RANDOM_H_

#include <cstdint>

namespace enercal {

// SplitMix64 generator. Every randomized routine in the library draws from
// this engine so that outputs are a pure function of the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t Next();

  // Uniform double in the open interval (0, 1).
  double NextOpenUnit();

  // Uniform integer in [0, bound). bound must be positive.
  uint64_t NextBelow(uint64_t bound);

  // Standard normal via Box-Muller on two successive draws.
  double NextNormal();

 private:
  uint64_t state_;
};

}  // namespace enercal

#endif  // ENERCAL_RANDOM_H_
