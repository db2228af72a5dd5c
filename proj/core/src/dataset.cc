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

#include "enercal/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "enercal/error.h"
#include "enercal/number_format.h"
#include "enercal/random.h"

namespace enercal {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string RowError(size_t row, std::string_view what) {
  std::ostringstream out;
  out << "row " << row << ": " << what;
  return out.str();
}

}  // namespace

LogitDataset::LogitDataset(int k, std::vector<double> logits,
                           std::vector<int> labels)
    : k_(k), logits_(std::move(logits)), labels_(std::move(labels)) {
  if (k_ < 2) throw ArgumentError("class count must be at least 2");
  if (labels_.empty()) throw ArgumentError("empty dataset");
  if (logits_.size() != labels_.size() * static_cast<size_t>(k_)) {
    throw ArgumentError("logit matrix does not have N * K entries");
  }
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < kOodLabel || labels_[i] >= k_) {
      throw ArgumentError(RowError(i + 1, "label out of range"));
    }
  }
  for (size_t i = 0; i < logits_.size(); ++i) {
    if (!std::isfinite(logits_[i])) {
      throw ArgumentError(
          RowError(i / static_cast<size_t>(k_) + 1, "non-finite logit"));
    }
  }
}

bool LogitDataset::fully_labeled() const {
  return std::none_of(labels_.begin(), labels_.end(),
                      [](int label) { return label == kOodLabel; });
}

LogitDataset LogitDataset::Select(std::span<const size_t> indices) const {
  std::vector<double> logits;
  std::vector<int> labels;
  logits.reserve(indices.size() * static_cast<size_t>(k_));
  labels.reserve(indices.size());
  for (const size_t i : indices) {
    const auto r = row(i);
    logits.insert(logits.end(), r.begin(), r.end());
    labels.push_back(labels_[i]);
  }
  return LogitDataset(k_, std::move(logits), std::move(labels));
}

LogitDataset ParseCsv(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) throw FormatError("missing header");

  const auto header = SplitFields(lines[0]);
  if (header[0] != "label") {
    throw FormatError("bad header token '" + std::string(header[0]) +
                      "', expected 'label'");
  }
  for (size_t c = 1; c < header.size(); ++c) {
    const std::string expected = "z" + std::to_string(c - 1);
    if (header[c] != expected) {
      throw FormatError("bad header token '" + std::string(header[c]) +
                        "', expected '" + expected + "'");
    }
  }
  const int k = static_cast<int>(header.size()) - 1;
  if (k < 2) throw FormatError("header must name at least two logit columns");

  // A single trailing newline produces no extra line; anything else blank is
  // reported as a short row.
  std::vector<double> logits;
  std::vector<int> labels;
  for (size_t li = 1; li < lines.size(); ++li) {
    const size_t row = li;
    const auto fields = SplitFields(lines[li]);
    if (fields.size() != header.size()) {
      throw FormatError(RowError(row, "expected " +
                                          std::to_string(header.size()) +
                                          " fields, found " +
                                          std::to_string(fields.size())));
    }
    int label = 0;
    if (!ParseInt(fields[0], label) || label < kOodLabel || label >= k) {
      throw FormatError(RowError(row, "column label: invalid label '" +
                                          std::string(fields[0]) + "'"));
    }
    labels.push_back(label);
    for (int c = 0; c < k; ++c) {
      double value = 0.0;
      const auto field = fields[static_cast<size_t>(c) + 1];
      if (!ParseDouble(field, value) || !std::isfinite(value)) {
        throw FormatError(RowError(row, "column z" + std::to_string(c) +
                                            ": invalid logit '" +
                                            std::string(field) + "'"));
      }
      logits.push_back(value);
    }
  }
  if (labels.empty()) throw FormatError("empty dataset");
  return LogitDataset(k, std::move(logits), std::move(labels));
}

LogitDataset LoadCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCsv(buffer.str());
}

std::string FormatCsv(const LogitDataset& ds) {
  std::string out = "label";
  for (int c = 0; c < ds.k(); ++c) out += ",z" + std::to_string(c);
  out += '\n';
  for (size_t i = 0; i < ds.size(); ++i) {
    out += std::to_string(ds.label(i));
    for (const double z : ds.row(i)) {
      out += ',';
      out += FormatDouble(z);
    }
    out += '\n';
  }
  return out;
}

void SaveCsv(const LogitDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << FormatCsv(ds);
  if (!out.flush()) throw IoError("write failed: " + path.string());
}

std::pair<LogitDataset, LogitDataset> Split(const LogitDataset& ds,
                                            double fraction, uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ArgumentError("split fraction must lie in (0, 1)");
  }
  const size_t n = ds.size();
  const auto first_size =
      static_cast<size_t>(std::llround(fraction * static_cast<double>(n)));
  if (first_size == 0 || first_size >= n) {
    throw ArgumentError("split leaves an empty part");
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  SplitMix64 rng(seed);
  for (size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.NextBelow(i + 1)]);
  }
  const std::span<const size_t> all(order);
  return {ds.Select(all.first(first_size)), ds.Select(all.subspan(first_size))};
}

}  // namespace enercal
