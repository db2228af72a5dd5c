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

#include "enercal/gaussian.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "enercal/error.h"

namespace enercal {

GaussianPdf GaussianPdf::Fit(std::span<const double> samples) {
  if (samples.empty()) throw ArgumentError("cannot fit a Gaussian to no samples");
  // Summing in sorted order makes the fit exactly permutation invariant.
  std::vector<double> sorted(samples.begin(), samples.end());
  for (const double x : sorted) {
    if (!std::isfinite(x)) throw ArgumentError("non-finite Gaussian sample");
  }
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (const double x : sorted) sum += x;
  const double n = static_cast<double>(sorted.size());
  const double mean = sum / n;
  double squares = 0.0;
  for (const double x : sorted) squares += (x - mean) * (x - mean);
  return {mean, std::max(std::sqrt(squares / n), kMinSigma)};
}

double GaussianPdf::Density(double x) const {
  const double u = (x - mu) / sigma;
  return std::exp(-0.5 * u * u) /
         (sigma * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace enercal
