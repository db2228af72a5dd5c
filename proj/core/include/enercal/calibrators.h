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

#ifndef ENERCAL_CALIBRATORS_H_
#define ENERCAL_CALIBRATORS_H_

#include <array>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "enercal/dataset.h"
#include "enercal/gaussian.h"
#include "enercal/scores.h"

namespace enercal {

// Bounds shared by every temperature the library fits or produces.
inline constexpr double kMinTemperature = 0.05;
inline constexpr double kMaxTemperature = 10.0;

// Single global temperature.
struct TemperatureParams {
  int k = 2;
  double t = 1.0;

  friend bool operator==(const TemperatureParams&,
                         const TemperatureParams&) = default;
};

// Energy-based instance-wise temperature scaling. For a logit vector z with
// free energy F, the temperature is
//
//   T(z) = max(t_min, t_ts - p_correct(F) * theta1 + p_incorrect(F) * theta2)
//
// so inputs whose energy looks like a correct prediction are sharpened and
// inputs that look like errors or OOD are flattened.
struct EnergyCalibratorParams {
  static constexpr double kMaxTheta = 10.0;

  int k = 2;
  double t_ts = 1.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  GaussianPdf p_correct;
  GaussianPdf p_incorrect;
  double t_min = kMinTemperature;

  double InstanceTemperature(std::span<const double> z) const;

  friend bool operator==(const EnergyCalibratorParams&,
                         const EnergyCalibratorParams&) = default;
};

// Uniform bins over top-label confidence, each mapped to its empirical
// accuracy.
struct HistogramBinningParams {
  int k = 2;
  std::vector<double> edges;   // M + 1 entries, edges[i] = i / M
  std::vector<double> values;  // M entries

  int bins() const { return static_cast<int>(values.size()); }

  friend bool operator==(const HistogramBinningParams&,
                         const HistogramBinningParams&) = default;
};

// Nondecreasing step function produced by pool-adjacent-violators. The value
// of block j holds on [breakpoints[j], breakpoints[j + 1]); queries below the
// first breakpoint clamp to the first value.
struct IsotonicMap {
  std::vector<double> breakpoints;
  std::vector<double> values;

  // Least-squares nondecreasing fit of y against x. Equal x values are pooled
  // before any violator is merged.
  static IsotonicMap Fit(std::span<const double> x, std::span<const double> y);

  double operator()(double x) const;

  friend bool operator==(const IsotonicMap&, const IsotonicMap&) = default;
};

// One isotonic map per class, fitted one-vs-all on softmax probabilities.
struct IsotonicOvAParams {
  int k = 2;
  std::vector<IsotonicMap> maps;

  friend bool operator==(const IsotonicOvAParams&,
                         const IsotonicOvAParams&) = default;
};

// Mixture w[0] * softmax(z / t) + w[1] * softmax(z) + w[2] / K.
struct EnsembleTsParams {
  int k = 2;
  double t = 1.0;
  std::array<double, 3> w = {1.0, 0.0, 0.0};

  friend bool operator==(const EnsembleTsParams&,
                         const EnsembleTsParams&) = default;
};

using Calibrator =
    std::variant<TemperatureParams, EnergyCalibratorParams,
                 HistogramBinningParams, IsotonicOvAParams, EnsembleTsParams>;

// "ts", "energy", "hb", "irova" or "ets".
std::string_view KindName(const Calibrator& calibrator);
int ClassCount(const Calibrator& calibrator);

// ---------------------------------------------------------------------------
// Fitting. Every fit is deterministic and single-threaded. Validation sets
// must be fully labeled; an OOD row there raises ArgumentError.

// Mean NLL of softmax(z / t) at the true labels.
double MeanNll(const LogitDataset& ds, double t);

// Golden-section search on log T over [kMinTemperature, kMaxTemperature],
// tolerance 1e-4 on T. A flat objective (range below 1e-10) yields T = 1.
TemperatureParams FitTemperature(const LogitDataset& val);

// Fits the two energy densities and (theta1, theta2).
//
// The correct pool holds validation rows whose raw argmax matches the label;
// every other validation row and every OOD row goes to the incorrect pool.
// theta minimizes the mean squared error between softmax(z / T(z)) and a
// target that is one-hot for labeled rows and uniform for OOD rows, first on
// a 41 x 41 grid over [0, 10]^2 and then by Nelder-Mead from the grid argmin.
//
// Throws FitError when either pool is empty and ArgumentError when K differs
// between the inputs.
EnergyCalibratorParams FitEnergyCalibrator(const LogitDataset& id_val,
                                           const LogitDataset& ood,
                                           const TemperatureParams& ts);

// The objective minimized by FitEnergyCalibrator, evaluated at the theta
// stored in `params`.
double EnergyCalibrationLoss(const EnergyCalibratorParams& params,
                             const LogitDataset& id_val,
                             const LogitDataset& ood);

// Empty bins fall back to their midpoint. Requires m >= 1.
HistogramBinningParams FitHistogramBinning(const LogitDataset& val, int m);

IsotonicOvAParams FitIsotonicOvA(const LogitDataset& val);

// t comes from FitTemperature; w is the best point of the simplex grid with
// step 0.01, scanned from (1, 0, 0). A later point replaces the incumbent only
// when it lowers the NLL by more than 1e-12.
EnsembleTsParams FitEnsembleTs(const LogitDataset& val);

double EnsembleMeanNll(const EnsembleTsParams& params, const LogitDataset& ds);

// Fits the family named by `kind` ("ts", "energy", "hb", "irova", "ets").
// Energy fits TS on `val` first and requires `ood`; `bins` is used by "hb".
Calibrator FitCalibrator(std::string_view kind, const LogitDataset& val,
                         const LogitDataset* ood, int bins);

// True for the five kinds FitCalibrator accepts.
bool IsCalibratorKind(std::string_view kind);

// ---------------------------------------------------------------------------
// Application. Throws ArgumentError when the logit count differs from k.

Prediction Apply(const TemperatureParams& params, std::span<const double> z);
Prediction Apply(const EnergyCalibratorParams& params,
                 std::span<const double> z);
Prediction Apply(const HistogramBinningParams& params,
                 std::span<const double> z);
Prediction Apply(const IsotonicOvAParams& params, std::span<const double> z);
Prediction Apply(const EnsembleTsParams& params, std::span<const double> z);
Prediction Apply(const Calibrator& calibrator, std::span<const double> z);

// Row-wise application, output in input order.
std::vector<Prediction> ApplyCalibrator(const Calibrator& calibrator,
                                        const LogitDataset& ds);

}  // namespace enercal

#endif  // ENERCAL_CALIBRATORS_H_
