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

#ifndef ENERCAL_METRICS_H_
#define ENERCAL_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "enercal/scores.h"

namespace enercal {

inline constexpr int kDefaultBins = 15;

// Equal-width confidence bins. Bin b (0-based) covers [b / M, (b + 1) / M);
// the last bin is closed at 1. Empty bins keep confidence and accuracy at 0
// and never enter a weighted sum.
struct BinStats {
  int m = kDefaultBins;
  std::vector<size_t> counts;
  std::vector<double> confidence;
  std::vector<double> accuracy;

  size_t total() const;
  double lower_edge(int bin) const { return static_cast<double>(bin) / m; }
  double upper_edge(int bin) const {
    return static_cast<double>(bin + 1) / m;
  }
};

// 0-based bin for a value in [0, 1] under the edge convention above.
int BinIndex(double value, int m);

// Throws ArgumentError on length mismatch, m < 1 or a negative label.
BinStats BinPredictions(std::span<const Prediction> predictions,
                        std::span<const int> labels, int m = kDefaultBins);

// Expected calibration error x 100. `n` must equal bins.total().
double Ece(const BinStats& bins, size_t n);

// Largest per-bin gap x 100 over nonempty bins.
double Mce(const BinStats& bins);

// Classwise calibration error x 100: each class probability is binned against
// the indicator of its label, and the per-class errors are averaged.
double Sce(std::span<const Prediction> predictions,
           std::span<const int> labels, int m = kDefaultBins);

double Accuracy(std::span<const Prediction> predictions,
                std::span<const int> labels);
double MeanConfidence(std::span<const Prediction> predictions);

// Scores for ID-vs-OOD ranking; higher means more in-distribution.
struct OodScores {
  std::vector<double> in;
  std::vector<double> out;
};

enum class PositiveSide { kIn, kOut };

// Mann-Whitney statistic over n_in * n_out pairs, ties worth one half.
double Auroc(const OodScores& scores);

// Average precision with grouped thresholds. For kOut the scores are negated
// so that OOD rows rank first.
double Aupr(const OodScores& scores, PositiveSide positive);

struct ReliabilityRow {
  int bin = 1;  // 1-based
  double lower = 0.0;
  double upper = 0.0;
  size_t count = 0;
  std::optional<double> confidence;
  std::optional<double> accuracy;
};

// One row per bin, empty bins included.
std::vector<ReliabilityRow> ReliabilityTable(const BinStats& bins);

}  // namespace enercal

#endif  // ENERCAL_METRICS_H_
