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

#include "enercal/calibrator_json.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "enercal/error.h"
#include "enercal/number_format.h"
#include "json.hpp"

namespace enercal {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Minimal writer: the documents are flat objects of numbers and number
// arrays, and every number must carry 17 significant digits.
class ObjectWriter {
 public:
  ObjectWriter(std::string_view kind, int k) {
    out_ = "{\n  \"kind\": \"" + std::string(kind) + "\",\n  \"k\": " +
           std::to_string(k);
  }

  void Number(std::string_view key, double value) {
    Key(key);
    out_ += FormatDouble(value);
  }

  void Array(std::string_view key, std::span<const double> values) {
    Key(key);
    out_ += FormatArray(values);
  }

  void Raw(std::string_view key, std::string_view text) {
    Key(key);
    out_ += text;
  }

  static std::string FormatArray(std::span<const double> values) {
    std::string s = "[";
    for (size_t i = 0; i < values.size(); ++i) {
      if (i > 0) s += ", ";
      s += FormatDouble(values[i]);
    }
    return s + "]";
  }

  std::string Finish() { return out_ + "\n}\n"; }

 private:
  void Key(std::string_view key) {
    out_ += ",\n  \"";
    out_ += key;
    out_ += "\": ";
  }

  std::string out_;
};

double GetNumber(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end() || !it->is_number()) {
    throw FormatError(std::string("missing numeric field '") + key + "'");
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) {
    throw FormatError(std::string("non-finite field '") + key + "'");
  }
  return v;
}

std::vector<double> GetArray(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end() || !it->is_array()) {
    throw FormatError(std::string("missing array field '") + key + "'");
  }
  std::vector<double> values;
  for (const auto& v : *it) {
    if (!v.is_number()) {
      throw FormatError(std::string("non-numeric entry in '") + key + "'");
    }
    values.push_back(v.get<double>());
  }
  return values;
}

void Require(bool condition, const std::string& message) {
  if (!condition) throw FormatError(message);
}

bool InUnit(double v) { return v >= 0.0 && v <= 1.0; }

GaussianPdf ReadPdf(const json& doc, const char* mu_key,
                    const char* sigma_key) {
  GaussianPdf pdf{GetNumber(doc, mu_key), GetNumber(doc, sigma_key)};
  Require(pdf.sigma >= GaussianPdf::kMinSigma,
          std::string(sigma_key) + " below the sigma floor");
  return pdf;
}

}  // namespace

std::string ToJson(const Calibrator& calibrator) {
  ObjectWriter w(KindName(calibrator), ClassCount(calibrator));
  std::visit(
      Overloaded{
          [&](const TemperatureParams& p) { w.Number("t", p.t); },
          [&](const EnergyCalibratorParams& p) {
            w.Number("t_ts", p.t_ts);
            w.Number("theta1", p.theta1);
            w.Number("theta2", p.theta2);
            w.Number("mu_correct", p.p_correct.mu);
            w.Number("sigma_correct", p.p_correct.sigma);
            w.Number("mu_incorrect", p.p_incorrect.mu);
            w.Number("sigma_incorrect", p.p_incorrect.sigma);
            w.Number("t_min", p.t_min);
          },
          [&](const HistogramBinningParams& p) {
            w.Array("edges", p.edges);
            w.Array("values", p.values);
          },
          [&](const IsotonicOvAParams& p) {
            std::string maps = "[";
            for (size_t c = 0; c < p.maps.size(); ++c) {
              if (c > 0) maps += ",";
              maps += "\n    {\"breakpoints\": " +
                      ObjectWriter::FormatArray(p.maps[c].breakpoints) +
                      ", \"values\": " +
                      ObjectWriter::FormatArray(p.maps[c].values) + "}";
            }
            w.Raw("maps", maps + "\n  ]");
          },
          [&](const EnsembleTsParams& p) {
            w.Number("t", p.t);
            w.Array("w", p.w);
          },
      },
      calibrator);
  return w.Finish();
}

Calibrator CalibratorFromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  Require(doc.is_object(), "calibrator document must be a JSON object");
  const auto kind_it = doc.find("kind");
  Require(kind_it != doc.end() && kind_it->is_string(),
          "missing string field 'kind'");
  const auto k_it = doc.find("k");
  Require(k_it != doc.end() && k_it->is_number_integer(),
          "missing integer field 'k'");
  const int k = k_it->get<int>();
  Require(k >= 2, "k must be at least 2");
  const std::string kind = kind_it->get<std::string>();

  if (kind == "ts") {
    TemperatureParams p{k, GetNumber(doc, "t")};
    Require(p.t >= kMinTemperature && p.t <= kMaxTemperature,
            "t outside [0.05, 10]");
    return p;
  }
  if (kind == "energy") {
    EnergyCalibratorParams p;
    p.k = k;
    p.t_ts = GetNumber(doc, "t_ts");
    p.theta1 = GetNumber(doc, "theta1");
    p.theta2 = GetNumber(doc, "theta2");
    p.p_correct = ReadPdf(doc, "mu_correct", "sigma_correct");
    p.p_incorrect = ReadPdf(doc, "mu_incorrect", "sigma_incorrect");
    p.t_min = GetNumber(doc, "t_min");
    Require(p.t_min > 0.0, "t_min must be positive");
    Require(p.t_ts >= kMinTemperature && p.t_ts <= kMaxTemperature,
            "t_ts outside [0.05, 10]");
    for (const double theta : {p.theta1, p.theta2}) {
      Require(theta >= 0.0 && theta <= EnergyCalibratorParams::kMaxTheta,
              "theta outside [0, 10]");
    }
    return p;
  }
  if (kind == "hb") {
    HistogramBinningParams p;
    p.k = k;
    p.edges = GetArray(doc, "edges");
    p.values = GetArray(doc, "values");
    Require(!p.values.empty() && p.edges.size() == p.values.size() + 1,
            "hb needs M values and M + 1 edges");
    for (size_t i = 1; i < p.edges.size(); ++i) {
      Require(p.edges[i - 1] < p.edges[i], "hb edges must increase");
    }
    Require(p.edges.front() == 0.0 && p.edges.back() == 1.0,
            "hb edges must span [0, 1]");
    for (const double v : p.values) Require(InUnit(v), "hb value outside [0, 1]");
    return p;
  }
  if (kind == "irova") {
    IsotonicOvAParams p;
    p.k = k;
    const auto maps_it = doc.find("maps");
    Require(maps_it != doc.end() && maps_it->is_array() &&
                maps_it->size() == static_cast<size_t>(k),
            "irova needs one map per class");
    for (const auto& entry : *maps_it) {
      Require(entry.is_object(), "irova map must be an object");
      IsotonicMap map{GetArray(entry, "breakpoints"), GetArray(entry, "values")};
      Require(!map.values.empty() &&
                  map.breakpoints.size() == map.values.size(),
              "irova map needs matching breakpoints and values");
      for (size_t i = 0; i < map.values.size(); ++i) {
        Require(InUnit(map.values[i]), "irova value outside [0, 1]");
        if (i > 0) {
          Require(map.breakpoints[i - 1] < map.breakpoints[i],
                  "irova breakpoints must increase");
          Require(map.values[i - 1] <= map.values[i],
                  "irova values must be nondecreasing");
        }
      }
      p.maps.push_back(std::move(map));
    }
    return p;
  }
  if (kind == "ets") {
    EnsembleTsParams p;
    p.k = k;
    p.t = GetNumber(doc, "t");
    Require(p.t >= kMinTemperature && p.t <= kMaxTemperature,
            "t outside [0.05, 10]");
    const auto w = GetArray(doc, "w");
    Require(w.size() == 3, "ets needs three weights");
    double sum = 0.0;
    for (size_t i = 0; i < 3; ++i) {
      Require(w[i] >= 0.0, "ets weights must be non-negative");
      p.w[i] = w[i];
      sum += w[i];
    }
    Require(std::abs(sum - 1.0) <= 1e-9, "ets weights must sum to 1");
    return p;
  }
  throw FormatError("unknown calibrator kind '" + kind + "'");
}

void SaveCalibrator(const Calibrator& calibrator,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << ToJson(calibrator);
  if (!out.flush()) throw IoError("write failed: " + path.string());
}

Calibrator LoadCalibrator(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return CalibratorFromJson(buffer.str());
}

}  // namespace enercal
