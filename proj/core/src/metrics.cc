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

#include "enercal/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "enercal/error.h"

namespace enercal {
namespace {

void CheckScores(const OodScores& scores) {
  if (scores.in.empty() || scores.out.empty()) {
    throw ArgumentError("OOD metrics need both in- and out-scores");
  }
  for (const auto* side : {&scores.in, &scores.out}) {
    for (const double s : *side) {
      if (std::isnan(s)) throw ArgumentError("NaN score");
    }
  }
}

void CheckLabels(std::span<const Prediction> predictions,
                 std::span<const int> labels) {
  if (predictions.size() != labels.size()) {
    throw ArgumentError("predictions and labels differ in length");
  }
  for (const int y : labels) {
    if (y < 0) throw ArgumentError("calibration metrics need labeled rows");
  }
}

}  // namespace

size_t BinStats::total() const {
  return std::accumulate(counts.begin(), counts.end(), size_t{0});
}

int BinIndex(double value, int m) {
  if (m < 1) throw ArgumentError("bin count must be at least 1");
  if (std::isnan(value)) throw ArgumentError("NaN confidence");
  if (value >= 1.0) return m - 1;
  if (value <= 0.0) return 0;
  int bin = std::clamp(static_cast<int>(value * m), 0, m - 1);
  // value * m can round across an edge; settle against the exact edges.
  while (bin + 1 < m && value >= static_cast<double>(bin + 1) / m) ++bin;
  while (bin > 0 && value < static_cast<double>(bin) / m) --bin;
  return bin;
}

BinStats BinPredictions(std::span<const Prediction> predictions,
                        std::span<const int> labels, int m) {
  if (m < 1) throw ArgumentError("bin count must be at least 1");
  CheckLabels(predictions, labels);
  BinStats bins;
  bins.m = m;
  bins.counts.assign(static_cast<size_t>(m), 0);
  bins.confidence.assign(static_cast<size_t>(m), 0.0);
  bins.accuracy.assign(static_cast<size_t>(m), 0.0);
  for (size_t i = 0; i < predictions.size(); ++i) {
    const auto b = static_cast<size_t>(BinIndex(predictions[i].confidence, m));
    ++bins.counts[b];
    bins.confidence[b] += predictions[i].confidence;
    if (predictions[i].predicted_label == labels[i]) bins.accuracy[b] += 1.0;
  }
  for (size_t b = 0; b < bins.counts.size(); ++b) {
    if (bins.counts[b] == 0) continue;
    const auto count = static_cast<double>(bins.counts[b]);
    bins.confidence[b] /= count;
    bins.accuracy[b] /= count;
  }
  return bins;
}

double Ece(const BinStats& bins, size_t n) {
  if (n == 0 || n != bins.total()) {
    throw ArgumentError("ECE sample count does not match the bin counts");
  }
  double ece = 0.0;
  for (size_t b = 0; b < bins.counts.size(); ++b) {
    if (bins.counts[b] == 0) continue;
    ece += static_cast<double>(bins.counts[b]) / static_cast<double>(n) *
           std::abs(bins.accuracy[b] - bins.confidence[b]);
  }
  return 100.0 * ece;
}

double Mce(const BinStats& bins) {
  double mce = -1.0;
  for (size_t b = 0; b < bins.counts.size(); ++b) {
    if (bins.counts[b] == 0) continue;
    mce = std::max(mce, std::abs(bins.accuracy[b] - bins.confidence[b]));
  }
  if (mce < 0.0) throw ArgumentError("MCE needs at least one nonempty bin");
  return 100.0 * mce;
}

double Sce(std::span<const Prediction> predictions,
           std::span<const int> labels, int m) {
  if (m < 1) throw ArgumentError("bin count must be at least 1");
  CheckLabels(predictions, labels);
  if (predictions.empty()) throw ArgumentError("SCE of an empty set");
  const size_t k = predictions[0].probabilities.size();
  for (size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i].probabilities.size() != k) {
      throw ArgumentError("probability rows differ in width");
    }
    if (static_cast<size_t>(labels[i]) >= k) {
      throw ArgumentError("label outside the probability width");
    }
  }
  const auto n = static_cast<double>(predictions.size());
  double total = 0.0;
  for (size_t c = 0; c < k; ++c) {
    std::vector<double> count(static_cast<size_t>(m), 0.0);
    std::vector<double> conf(static_cast<size_t>(m), 0.0);
    std::vector<double> hits(static_cast<size_t>(m), 0.0);
    for (size_t i = 0; i < predictions.size(); ++i) {
      const double p = predictions[i].probabilities[c];
      const auto b = static_cast<size_t>(BinIndex(p, m));
      count[b] += 1.0;
      conf[b] += p;
      if (static_cast<size_t>(labels[i]) == c) hits[b] += 1.0;
    }
    for (size_t b = 0; b < count.size(); ++b) {
      if (count[b] == 0.0) continue;
      total += count[b] / n * std::abs(hits[b] / count[b] - conf[b] / count[b]);
    }
  }
  return 100.0 * total / static_cast<double>(k);
}

double Accuracy(std::span<const Prediction> predictions,
                std::span<const int> labels) {
  CheckLabels(predictions, labels);
  if (predictions.empty()) throw ArgumentError("accuracy of an empty set");
  size_t hits = 0;
  for (size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i].predicted_label == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

double MeanConfidence(std::span<const Prediction> predictions) {
  if (predictions.empty()) throw ArgumentError("mean of an empty set");
  double sum = 0.0;
  for (const Prediction& p : predictions) sum += p.confidence;
  return sum / static_cast<double>(predictions.size());
}

double Auroc(const OodScores& scores) {
  CheckScores(scores);
  // (score, is_in), ranked ascending with midranks for ties.
  std::vector<std::pair<double, bool>> all;
  all.reserve(scores.in.size() + scores.out.size());
  for (const double s : scores.in) all.emplace_back(s, true);
  for (const double s : scores.out) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double in_rank_sum = 0.0;
  for (size_t i = 0; i < all.size();) {
    size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (size_t t = i; t < j; ++t) {
      if (all[t].second) in_rank_sum += midrank;
    }
    i = j;
  }
  const auto n_in = static_cast<double>(scores.in.size());
  const auto n_out = static_cast<double>(scores.out.size());
  return (in_rank_sum - n_in * (n_in + 1.0) / 2.0) / (n_in * n_out);
}

double Aupr(const OodScores& scores, PositiveSide positive) {
  CheckScores(scores);
  const bool in_positive = positive == PositiveSide::kIn;
  const double sign = in_positive ? 1.0 : -1.0;
  std::vector<std::pair<double, bool>> all;  // (score, is_positive)
  all.reserve(scores.in.size() + scores.out.size());
  for (const double s : scores.in) all.emplace_back(sign * s, in_positive);
  for (const double s : scores.out) all.emplace_back(sign * s, !in_positive);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  const auto positives = static_cast<double>(
      in_positive ? scores.in.size() : scores.out.size());
  double tp = 0.0;
  double fp = 0.0;
  double recall = 0.0;
  double ap = 0.0;
  for (size_t i = 0; i < all.size();) {
    size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) {
      (all[j].second ? tp : fp) += 1.0;
      ++j;
    }
    const double next_recall = tp / positives;
    ap += (next_recall - recall) * tp / (tp + fp);
    recall = next_recall;
    i = j;
  }
  return ap;
}

std::vector<ReliabilityRow> ReliabilityTable(const BinStats& bins) {
  std::vector<ReliabilityRow> rows;
  for (int b = 0; b < bins.m; ++b) {
    ReliabilityRow row;
    row.bin = b + 1;
    row.lower = bins.lower_edge(b);
    row.upper = bins.upper_edge(b);
    row.count = bins.counts[static_cast<size_t>(b)];
    if (row.count > 0) {
      row.confidence = bins.confidence[static_cast<size_t>(b)];
      row.accuracy = bins.accuracy[static_cast<size_t>(b)];
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace enercal
