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

#include "enercal/scores.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "enercal/error.h"

namespace enercal {
namespace {

void CheckLogits(std::span<const double> z) {
  if (z.empty()) throw ArgumentError("empty logit vector");
  for (const double v : z) {
    if (!std::isfinite(v)) throw ArgumentError("non-finite logit");
  }
}

void CheckTemperature(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw ArgumentError("temperature must be positive and finite");
  }
}

}  // namespace

double LogSumExp(std::span<const double> z) {
  CheckLogits(z);
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (const double v : z) sum += std::exp(v - m);
  return m + std::log(sum);
}

EnergyScore Energy(std::span<const double> z) { return {-LogSumExp(z)}; }

std::vector<double> TemperedSoftmax(std::span<const double> z, double t) {
  CheckLogits(z);
  CheckTemperature(t);
  const double m = *std::max_element(z.begin(), z.end());
  std::vector<double> p(z.size());
  double sum = 0.0;
  for (size_t i = 0; i < z.size(); ++i) {
    p[i] = std::exp((z[i] - m) / t);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

int ArgMax(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("argmax of an empty vector");
  return static_cast<int>(std::max_element(values.begin(), values.end()) -
                          values.begin());
}

Prediction Predict(std::span<const double> z, double t) {
  Prediction out;
  out.probabilities = TemperedSoftmax(z, t);
  out.predicted_label = ArgMax(z);
  out.confidence = out.probabilities[static_cast<size_t>(out.predicted_label)];
  return out;
}

Prediction PredictionFromProbabilities(std::vector<double> probabilities) {
  Prediction out;
  out.predicted_label = ArgMax(probabilities);
  out.confidence = probabilities[static_cast<size_t>(out.predicted_label)];
  out.probabilities = std::move(probabilities);
  return out;
}

double NegLogLikelihood(std::span<const double> z, int y, double t) {
  CheckLogits(z);
  CheckTemperature(t);
  if (y < 0 || static_cast<size_t>(y) >= z.size()) {
    throw ArgumentError("class index " + std::to_string(y) + " out of range");
  }
  const size_t top = static_cast<size_t>(ArgMax(z));
  const double m = z[top];
  double rest = 0.0;
  for (size_t i = 0; i < z.size(); ++i) {
    if (i != top) rest += std::exp((z[i] - m) / t);
  }
  return (m - z[static_cast<size_t>(y)]) / t + std::log1p(rest);
}

double NllIdentityResidual(std::span<const double> z, int y) {
  if (y < 0 || static_cast<size_t>(y) >= z.size()) {
    throw ArgumentError("class index " + std::to_string(y) + " out of range");
  }
  const double nll = -std::log(TemperedSoftmax(z, 1.0)[static_cast<size_t>(y)]);
  const double label_energy = -z[static_cast<size_t>(y)];
  return std::abs(nll - (label_energy - Energy(z).value));
}

}  // namespace enercal
