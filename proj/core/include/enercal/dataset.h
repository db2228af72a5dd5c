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

#ifndef ENERCAL_DATASET_H_
#define ENERCAL_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace enercal {

// Label value for rows without an in-distribution class (semantic OOD).
inline constexpr int kOodLabel = -1;

// N x K matrix of classifier logits with one label per row. Immutable once
// constructed; the constructor enforces every invariant.
class LogitDataset {
 public:
  // `logits` is row-major with labels.size() * k entries.
  LogitDataset(int k, std::vector<double> logits, std::vector<int> labels);

  int k() const { return k_; }
  size_t size() const { return labels_.size(); }

  std::span<const double> row(size_t i) const {
    return {logits_.data() + i * static_cast<size_t>(k_),
            static_cast<size_t>(k_)};
  }
  int label(size_t i) const { return labels_[i]; }

  std::span<const int> labels() const { return labels_; }
  std::span<const double> logits() const { return logits_; }

  // True when no row carries the OOD sentinel.
  bool fully_labeled() const;

  // Rows `indices` in the given order.
  LogitDataset Select(std::span<const size_t> indices) const;

  friend bool operator==(const LogitDataset&, const LogitDataset&) = default;

 private:
  int k_;
  std::vector<double> logits_;
  std::vector<int> labels_;
};

// Reads `label,z0,...,z{K-1}` CSV. Throws FormatError with the row index
// (1-based, data rows only) and column name on malformed input.
LogitDataset LoadCsv(const std::filesystem::path& path);
LogitDataset ParseCsv(std::string_view text);

// Writes the same format; logits use 17 significant digits.
void SaveCsv(const LogitDataset& ds, const std::filesystem::path& path);
std::string FormatCsv(const LogitDataset& ds);

// Seeded shuffle, then the first round(fraction * N) rows go to the first
// part. Throws ArgumentError when either part would be empty.
std::pair<LogitDataset, LogitDataset> Split(const LogitDataset& ds,
                                            double fraction, uint64_t seed);

}  // namespace enercal

#endif  // ENERCAL_DATASET_H_
