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

#ifndef ENERCAL_GAUSSIAN_H_
#define ENERCAL_GAUSSIAN_H_

#include <span>

namespace enercal {

// One-dimensional normal density fitted by maximum likelihood.
struct GaussianPdf {
  static constexpr double kMinSigma = 1e-6;

  double mu = 0.0;
  double sigma = 1.0;

  // Population mean and standard deviation, sigma floored at kMinSigma.
  // Throws ArgumentError on empty or non-finite samples.
  static GaussianPdf Fit(std::span<const double> samples);

  double Density(double x) const;

  friend bool operator==(const GaussianPdf&, const GaussianPdf&) = default;
};

}  // namespace enercal

#endif  // ENERCAL_GAUSSIAN_H_
