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

#include "enercal/calibrators.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "enercal/error.h"
#include "enercal/metrics.h"

namespace enercal {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void RequireLabels(const LogitDataset& ds, const char* what) {
  if (!ds.fully_labeled()) {
    throw ArgumentError(std::string(what) +
                        " must not contain unlabeled (OOD) rows");
  }
}

void RequireWidth(int k, std::span<const double> z) {
  if (z.size() != static_cast<size_t>(k)) {
    throw ArgumentError("calibrator expects " + std::to_string(k) +
                        " logits, got " + std::to_string(z.size()));
  }
}

// Mean squared error of the instance-wise calibrated softmax over an ID
// validation set and an OOD set, as a function of (theta1, theta2). The
// density terms are fixed per row, so they are computed once.
class EnergyObjective {
 public:
  EnergyObjective(const EnergyCalibratorParams& base,
                  const LogitDataset& id_val, const LogitDataset& ood)
      : base_(base), k_(base.k) {
    rows_.reserve(id_val.size() + ood.size());
    auto add = [&](const LogitDataset& ds, bool is_ood) {
      for (size_t i = 0; i < ds.size(); ++i) {
        const auto z = ds.row(i);
        const double f = Energy(z).value;
        rows_.push_back({z, is_ood ? kOodLabel : ds.label(i),
                         base.p_correct.Density(f),
                         base.p_incorrect.Density(f)});
      }
    };
    add(id_val, false);
    add(ood, true);
  }

  double operator()(double theta1, double theta2) const {
    std::vector<double> p(static_cast<size_t>(k_));
    const double uniform = 1.0 / k_;
    double total = 0.0;
    for (const Row& row : rows_) {
      const double t =
          std::max(base_.t_min, base_.t_ts - row.lambda_correct * theta1 +
                                    row.lambda_incorrect * theta2);
      const double m = *std::max_element(row.z.begin(), row.z.end());
      double sum = 0.0;
      for (size_t c = 0; c < p.size(); ++c) {
        p[c] = std::exp((row.z[c] - m) / t);
        sum += p[c];
      }
      double loss = 0.0;
      for (size_t c = 0; c < p.size(); ++c) {
        double target = uniform;
        if (row.label != kOodLabel) {
          target = static_cast<int>(c) == row.label ? 1.0 : 0.0;
        }
        const double d = p[c] / sum - target;
        loss += d * d;
      }
      total += loss;
    }
    return total / static_cast<double>(rows_.size());
  }

 private:
  struct Row {
    std::span<const double> z;
    int label;
    double lambda_correct;
    double lambda_incorrect;
  };

  EnergyCalibratorParams base_;
  int k_;
  std::vector<Row> rows_;
};

struct Vertex {
  std::array<double, 2> x;
  double f;
};

// Nelder-Mead over the box [0, kMaxTheta]^2; every trial point is clamped
// into the box before evaluation.
template <class Objective>
Vertex MinimizeInBox(const Objective& objective, Vertex start, double step,
                     int max_iterations, double tolerance) {
  static constexpr double kHi = EnergyCalibratorParams::kMaxTheta;
  auto project = [](std::array<double, 2> x) {
    for (double& v : x) v = std::clamp(v, 0.0, kHi);
    return x;
  };
  auto eval = [&](std::array<double, 2> x) {
    x = project(x);
    return Vertex{x, objective(x[0], x[1])};
  };
  auto offset = [&](double base, double delta) {
    return base + delta <= kHi ? base + delta : base - delta;
  };

  std::array<Vertex, 3> s = {
      start, eval({offset(start.x[0], step), start.x[1]}),
      eval({start.x[0], offset(start.x[1], step)})};
  auto along = [](const std::array<double, 2>& from,
                  const std::array<double, 2>& to, double scale) {
    return std::array<double, 2>{from[0] + scale * (to[0] - from[0]),
                                 from[1] + scale * (to[1] - from[1])};
  };

  for (int iter = 0; iter < max_iterations; ++iter) {
    std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) {
      return a.f < b.f;
    });
    double spread = 0.0;
    for (int v = 1; v < 3; ++v) {
      for (int d = 0; d < 2; ++d) {
        spread = std::max(spread, std::abs(s[v].x[d] - s[0].x[d]));
      }
    }
    if (spread <= tolerance) break;

    const std::array<double, 2> centroid = {0.5 * (s[0].x[0] + s[1].x[0]),
                                            0.5 * (s[0].x[1] + s[1].x[1])};
    const Vertex reflected = eval(along(centroid, s[2].x, -1.0));
    if (reflected.f < s[0].f) {
      const Vertex expanded = eval(along(centroid, s[2].x, -2.0));
      s[2] = expanded.f < reflected.f ? expanded : reflected;
      continue;
    }
    if (reflected.f < s[1].f) {
      s[2] = reflected;
      continue;
    }
    if (reflected.f < s[2].f) {
      const Vertex outside = eval(along(centroid, reflected.x, 0.5));
      if (outside.f <= reflected.f) {
        s[2] = outside;
        continue;
      }
    } else {
      const Vertex inside = eval(along(centroid, s[2].x, 0.5));
      if (inside.f < s[2].f) {
        s[2] = inside;
        continue;
      }
    }
    for (int v = 1; v < 3; ++v) s[v] = eval(along(s[0].x, s[v].x, 0.5));
  }
  return *std::min_element(s.begin(), s.end(),
                           [](const Vertex& a, const Vertex& b) {
                             return a.f < b.f;
                           });
}

std::vector<double> Softmax(std::span<const double> z) {
  return TemperedSoftmax(z, 1.0);
}

}  // namespace

double EnergyCalibratorParams::InstanceTemperature(
    std::span<const double> z) const {
  const double f = Energy(z).value;
  return std::max(t_min, t_ts - p_correct.Density(f) * theta1 +
                             p_incorrect.Density(f) * theta2);
}

double IsotonicMap::operator()(double x) const {
  if (values.empty()) throw ArgumentError("empty isotonic map");
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  const auto index = it == breakpoints.begin() ? 0 : it - breakpoints.begin() - 1;
  return values[static_cast<size_t>(index)];
}

IsotonicMap IsotonicMap::Fit(std::span<const double> x,
                             std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw ArgumentError("isotonic fit needs equal-length nonempty inputs");
  }
  std::vector<size_t> order(x.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return x[a] < x[b]; });

  struct Block {
    double start;
    double sum;
    double weight;
    double mean() const { return sum / weight; }
  };
  std::vector<Block> blocks;
  for (const size_t i : order) {
    if (!blocks.empty() && blocks.back().start == x[i]) {
      blocks.back().sum += y[i];
      blocks.back().weight += 1.0;
    } else {
      blocks.push_back({x[i], y[i], 1.0});
    }
  }
  std::vector<Block> stack;
  for (const Block& b : blocks) {
    stack.push_back(b);
    while (stack.size() >= 2 &&
           stack[stack.size() - 2].mean() > stack.back().mean()) {
      Block last = stack.back();
      stack.pop_back();
      stack.back().sum += last.sum;
      stack.back().weight += last.weight;
    }
  }
  IsotonicMap map;
  for (const Block& b : stack) {
    map.breakpoints.push_back(b.start);
    map.values.push_back(b.mean());
  }
  return map;
}

std::string_view KindName(const Calibrator& calibrator) {
  return std::visit(Overloaded{
                        [](const TemperatureParams&) { return "ts"; },
                        [](const EnergyCalibratorParams&) { return "energy"; },
                        [](const HistogramBinningParams&) { return "hb"; },
                        [](const IsotonicOvAParams&) { return "irova"; },
                        [](const EnsembleTsParams&) { return "ets"; },
                    },
                    calibrator);
}

int ClassCount(const Calibrator& calibrator) {
  return std::visit([](const auto& params) { return params.k; }, calibrator);
}

double MeanNll(const LogitDataset& ds, double t) {
  RequireLabels(ds, "NLL dataset");
  double total = 0.0;
  for (size_t i = 0; i < ds.size(); ++i) {
    total += NegLogLikelihood(ds.row(i), ds.label(i), t);
  }
  return total / static_cast<double>(ds.size());
}

TemperatureParams FitTemperature(const LogitDataset& val) {
  RequireLabels(val, "temperature validation set");
  const double lo = std::log(kMinTemperature);
  const double hi = std::log(kMaxTemperature);
  auto nll = [&](double log_t) { return MeanNll(val, std::exp(log_t)); };

  constexpr int kProbes = 33;
  double probe_min = INFINITY;
  double probe_max = -INFINITY;
  for (int i = 0; i < kProbes; ++i) {
    const double v = nll(lo + (hi - lo) * i / (kProbes - 1));
    probe_min = std::min(probe_min, v);
    probe_max = std::max(probe_max, v);
  }
  if (probe_max - probe_min < 1e-10) return {val.k(), 1.0};

  // The NLL is convex in 1 / T, hence unimodal in log T.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = nll(c);
  double fd = nll(d);
  while (std::exp(b) - std::exp(a) > 1e-4) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = nll(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = nll(d);
    }
  }
  double best_t = std::clamp(std::exp(0.5 * (a + b)), kMinTemperature,
                             kMaxTemperature);
  double best = MeanNll(val, best_t);
  for (const double edge : {kMinTemperature, kMaxTemperature}) {
    const double v = MeanNll(val, edge);
    if (v < best) {
      best = v;
      best_t = edge;
    }
  }
  return {val.k(), best_t};
}

EnergyCalibratorParams FitEnergyCalibrator(const LogitDataset& id_val,
                                           const LogitDataset& ood,
                                           const TemperatureParams& ts) {
  if (id_val.k() != ood.k() || ts.k != id_val.k()) {
    throw ArgumentError("class counts differ between validation, OOD and "
                        "temperature inputs");
  }
  RequireLabels(id_val, "ID validation set");
  if (!(ts.t >= kMinTemperature && ts.t <= kMaxTemperature)) {
    throw ArgumentError("temperature outside [0.05, 10]");
  }

  std::vector<double> correct;
  std::vector<double> incorrect;
  for (size_t i = 0; i < id_val.size(); ++i) {
    const auto z = id_val.row(i);
    const double f = Energy(z).value;
    (ArgMax(z) == id_val.label(i) ? correct : incorrect).push_back(f);
  }
  for (size_t i = 0; i < ood.size(); ++i) {
    incorrect.push_back(Energy(ood.row(i)).value);
  }
  if (correct.empty() || incorrect.empty()) {
    throw FitError("cannot estimate both densities: " +
                   std::to_string(correct.size()) + " correct and " +
                   std::to_string(incorrect.size()) + " incorrect samples");
  }

  EnergyCalibratorParams params;
  params.k = id_val.k();
  params.t_ts = ts.t;
  params.p_correct = GaussianPdf::Fit(correct);
  params.p_incorrect = GaussianPdf::Fit(incorrect);
  params.t_min = kMinTemperature;

  const EnergyObjective objective(params, id_val, ood);
  constexpr int kGrid = 41;
  constexpr double kStep = EnergyCalibratorParams::kMaxTheta / (kGrid - 1);
  Vertex best{{0.0, 0.0}, objective(0.0, 0.0)};
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const std::array<double, 2> x = {i * kStep, j * kStep};
      const double f = objective(x[0], x[1]);
      if (f < best.f) best = {x, f};
    }
  }
  const Vertex refined = MinimizeInBox(objective, best, kStep,
                                       /*max_iterations=*/200,
                                       /*tolerance=*/1e-6);
  if (refined.f < best.f) best = refined;
  params.theta1 = best.x[0];
  params.theta2 = best.x[1];
  return params;
}

double EnergyCalibrationLoss(const EnergyCalibratorParams& params,
                             const LogitDataset& id_val,
                             const LogitDataset& ood) {
  if (id_val.k() != params.k || ood.k() != params.k) {
    throw ArgumentError("class count mismatch");
  }
  RequireLabels(id_val, "ID validation set");
  return EnergyObjective(params, id_val, ood)(params.theta1, params.theta2);
}

HistogramBinningParams FitHistogramBinning(const LogitDataset& val, int m) {
  if (m < 1) throw ArgumentError("bin count must be at least 1");
  RequireLabels(val, "histogram binning validation set");
  std::vector<double> hits(static_cast<size_t>(m), 0.0);
  std::vector<double> counts(static_cast<size_t>(m), 0.0);
  for (size_t i = 0; i < val.size(); ++i) {
    const Prediction p = Predict(val.row(i));
    const auto bin = static_cast<size_t>(BinIndex(p.confidence, m));
    counts[bin] += 1.0;
    if (p.predicted_label == val.label(i)) hits[bin] += 1.0;
  }
  HistogramBinningParams params;
  params.k = val.k();
  for (int b = 0; b <= m; ++b) {
    params.edges.push_back(static_cast<double>(b) / m);
  }
  for (size_t b = 0; b < counts.size(); ++b) {
    params.values.push_back(counts[b] > 0.0
                                ? hits[b] / counts[b]
                                : 0.5 * (params.edges[b] + params.edges[b + 1]));
  }
  return params;
}

IsotonicOvAParams FitIsotonicOvA(const LogitDataset& val) {
  RequireLabels(val, "isotonic validation set");
  const auto k = static_cast<size_t>(val.k());
  std::vector<std::vector<double>> x(k);
  std::vector<std::vector<double>> y(k);
  for (size_t i = 0; i < val.size(); ++i) {
    const auto p = Softmax(val.row(i));
    for (size_t c = 0; c < k; ++c) {
      x[c].push_back(p[c]);
      y[c].push_back(static_cast<int>(c) == val.label(i) ? 1.0 : 0.0);
    }
  }
  IsotonicOvAParams params;
  params.k = val.k();
  for (size_t c = 0; c < k; ++c) {
    params.maps.push_back(IsotonicMap::Fit(x[c], y[c]));
  }
  return params;
}

double EnsembleMeanNll(const EnsembleTsParams& params,
                       const LogitDataset& ds) {
  RequireLabels(ds, "ensemble dataset");
  double total = 0.0;
  for (size_t i = 0; i < ds.size(); ++i) {
    const Prediction p = Apply(params, ds.row(i));
    total -= std::log(p.probabilities[static_cast<size_t>(ds.label(i))]);
  }
  return total / static_cast<double>(ds.size());
}

EnsembleTsParams FitEnsembleTs(const LogitDataset& val) {
  RequireLabels(val, "ensemble validation set");
  const TemperatureParams ts = FitTemperature(val);
  // Only the label entry of each component enters the NLL.
  std::vector<double> tempered(val.size());
  std::vector<double> raw(val.size());
  for (size_t i = 0; i < val.size(); ++i) {
    const auto y = static_cast<size_t>(val.label(i));
    tempered[i] = TemperedSoftmax(val.row(i), ts.t)[y];
    raw[i] = Softmax(val.row(i))[y];
  }
  const double uniform = 1.0 / val.k();
  auto nll = [&](const std::array<double, 3>& w) {
    double total = 0.0;
    for (size_t i = 0; i < val.size(); ++i) {
      total -= std::log(w[0] * tempered[i] + w[1] * raw[i] + w[2] * uniform);
    }
    return total / static_cast<double>(val.size());
  };

  constexpr int kSteps = 100;
  std::array<double, 3> best_w = {1.0, 0.0, 0.0};
  double best = nll(best_w);
  for (int i = kSteps; i >= 0; --i) {
    for (int j = 0; j <= kSteps - i; ++j) {
      const std::array<double, 3> w = {
          static_cast<double>(i) / kSteps, static_cast<double>(j) / kSteps,
          static_cast<double>(kSteps - i - j) / kSteps};
      const double v = nll(w);
      if (v < best - 1e-12) {
        best = v;
        best_w = w;
      }
    }
  }
  return {val.k(), ts.t, best_w};
}

bool IsCalibratorKind(std::string_view kind) {
  return kind == "ts" || kind == "energy" || kind == "hb" || kind == "irova" ||
         kind == "ets";
}

Calibrator FitCalibrator(std::string_view kind, const LogitDataset& val,
                         const LogitDataset* ood, int bins) {
  if (kind == "ts") return FitTemperature(val);
  if (kind == "energy") {
    if (ood == nullptr) throw ArgumentError("energy calibration needs OOD data");
    return FitEnergyCalibrator(val, *ood, FitTemperature(val));
  }
  if (kind == "hb") return FitHistogramBinning(val, bins);
  if (kind == "irova") return FitIsotonicOvA(val);
  if (kind == "ets") return FitEnsembleTs(val);
  throw ArgumentError("unknown calibrator kind '" + std::string(kind) + "'");
}

Prediction Apply(const TemperatureParams& params, std::span<const double> z) {
  RequireWidth(params.k, z);
  return Predict(z, params.t);
}

Prediction Apply(const EnergyCalibratorParams& params,
                 std::span<const double> z) {
  RequireWidth(params.k, z);
  return Predict(z, params.InstanceTemperature(z));
}

Prediction Apply(const HistogramBinningParams& params,
                 std::span<const double> z) {
  RequireWidth(params.k, z);
  const Prediction raw = Predict(z);
  const double calibrated = params.values[static_cast<size_t>(
      BinIndex(raw.confidence, params.bins()))];
  const auto top = static_cast<size_t>(raw.predicted_label);
  double rest = 0.0;
  for (size_t c = 0; c < raw.probabilities.size(); ++c) {
    if (c != top) rest += raw.probabilities[c];
  }
  std::vector<double> p(raw.probabilities.size());
  for (size_t c = 0; c < p.size(); ++c) {
    if (c == top) {
      p[c] = calibrated;
    } else if (rest > 0.0) {
      p[c] = raw.probabilities[c] * (1.0 - calibrated) / rest;
    } else {
      p[c] = (1.0 - calibrated) / static_cast<double>(p.size() - 1);
    }
  }
  return PredictionFromProbabilities(std::move(p));
}

Prediction Apply(const IsotonicOvAParams& params, std::span<const double> z) {
  RequireWidth(params.k, z);
  auto p = Softmax(z);
  double sum = 0.0;
  for (size_t c = 0; c < p.size(); ++c) {
    p[c] = params.maps[c](p[c]);
    sum += p[c];
  }
  for (double& v : p) v = sum > 0.0 ? v / sum : 1.0 / static_cast<double>(p.size());
  return PredictionFromProbabilities(std::move(p));
}

Prediction Apply(const EnsembleTsParams& params, std::span<const double> z) {
  RequireWidth(params.k, z);
  const auto tempered = TemperedSoftmax(z, params.t);
  const auto raw = Softmax(z);
  const double uniform = 1.0 / params.k;
  Prediction out;
  out.probabilities.resize(z.size());
  for (size_t c = 0; c < z.size(); ++c) {
    out.probabilities[c] = params.w[0] * tempered[c] + params.w[1] * raw[c] +
                           params.w[2] * uniform;
  }
  // Every component orders classes like z, so the label is read off z.
  out.predicted_label = ArgMax(z);
  out.confidence = out.probabilities[static_cast<size_t>(out.predicted_label)];
  return out;
}

Prediction Apply(const Calibrator& calibrator, std::span<const double> z) {
  return std::visit([&](const auto& params) { return Apply(params, z); },
                    calibrator);
}

std::vector<Prediction> ApplyCalibrator(const Calibrator& calibrator,
                                        const LogitDataset& ds) {
  if (ClassCount(calibrator) != ds.k()) {
    throw ArgumentError("calibrator has K=" +
                        std::to_string(ClassCount(calibrator)) +
                        " but data has K=" + std::to_string(ds.k()));
  }
  std::vector<Prediction> out;
  out.reserve(ds.size());
  for (size_t i = 0; i < ds.size(); ++i) out.push_back(Apply(calibrator, ds.row(i)));
  return out;
}

}  // namespace enercal
