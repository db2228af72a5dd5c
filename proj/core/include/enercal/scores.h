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

#ifndef ENERCAL_SCORES_H_
#define ENERCAL_SCORES_H_

#include <span>
#include <vector>

namespace enercal {

// Calibrated or raw prediction for one row.
struct Prediction {
  int predicted_label = 0;
  double confidence = 0.0;
  std::vector<double> probabilities;
};

// Free energy of a logit vector, -log sum_i exp(z_i). Lower values mean a
// more confident, more in-distribution input.
struct EnergyScore {
  double value = 0.0;

  friend auto operator<=>(const EnergyScore&, const EnergyScore&) = default;
};

// log sum_i exp(z_i) with max subtraction. Throws ArgumentError on empty or
// non-finite input.
double LogSumExp(std::span<const double> z);

EnergyScore Energy(std::span<const double> z);

// softmax(z / t), renormalized. Requires t > 0.
std::vector<double> TemperedSoftmax(std::span<const double> z, double t);

// Index of the largest entry; ties go to the lowest index.
int ArgMax(std::span<const double> values);

// Prediction from softmax(z / t). The label is the argmax of z, which is the
// argmax of the probabilities for every t > 0.
Prediction Predict(std::span<const double> z, double t = 1.0);

// Prediction whose label and confidence are read off a probability vector.
Prediction PredictionFromProbabilities(std::vector<double> probabilities);

// -log softmax(z / t)[y], evaluated with log1p so that near-zero losses keep
// their relative precision.
double NegLogLikelihood(std::span<const double> z, int y, double t = 1.0);

// |(-log softmax(z)[y]) - (E(z, y) - F(z))| where E(z, y) = -z_y. The two
// sides are evaluated independently; the result measures round-off only.
double NllIdentityResidual(std::span<const double> z, int y);

}  // namespace enercal

#endif  // ENERCAL_SCORES_H_
