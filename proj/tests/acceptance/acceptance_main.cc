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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/bench.h"
#include "cli/commands.h"
#include "enercal/calibrators.h"
#include "enercal/dataset.h"
#include "enercal/metrics.h"
#include "enercal/scores.h"
#include "enercal/synthetic.h"
#include "oracles.h"

namespace enercal {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double a = 0, double b = 0, double c = 0,
                double d = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, a, b, c, d);
  return buffer;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ------------------------------------------------------------------ 1

Outcome CalibrationMetricOracles() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const size_t n = 1 + rng() % 64;
    const size_t k = 2 + rng() % 4;
    const int m = std::vector<int>{1, 5, 15}[rng() % 3];
    std::vector<Prediction> preds;
    std::vector<std::vector<double>> probs;
    std::vector<int> labels;
    std::vector<double> conf;
    std::vector<bool> correct;
    for (size_t i = 0; i < n; ++i) {
      probs.push_back(testing::RandomSimplex(rng, k, trial % 2 == 0));
      preds.push_back(PredictionFromProbabilities(probs.back()));
      labels.push_back(static_cast<int>(rng() % k));
      conf.push_back(preds.back().confidence);
      correct.push_back(preds.back().predicted_label == labels.back());
    }
    const BinStats bins = BinPredictions(preds, labels, m);
    worst = std::max(worst, std::abs(Ece(bins, n) -
                                     testing::BruteForceEce(conf, correct, m)));
    worst = std::max(worst, std::abs(Sce(preds, labels, m) -
                                     testing::BruteForceSce(probs, labels, m)));
  }
  const double elapsed = Seconds(start);
  return {worst <= 1e-12 && elapsed < 5.0,
          Fmt("max |diff| %.3g over 500 datasets, %.2f s", worst, elapsed)};
}

// ------------------------------------------------------------------ 2

Outcome RankingMetricOracles() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n_in = 1 + rng() % 200;
    const size_t n_out = 1 + rng() % 200;
    const uint64_t levels = trial % 2 == 0 ? 4 : uint64_t{1} << 40;
    OodScores s;
    for (size_t i = 0; i < n_in; ++i) s.in.push_back(static_cast<double>(rng() % levels));
    for (size_t i = 0; i < n_out; ++i) s.out.push_back(static_cast<double>(rng() % levels));
    std::vector<double> neg_in;
    std::vector<double> neg_out;
    for (const double v : s.in) neg_in.push_back(-v);
    for (const double v : s.out) neg_out.push_back(-v);
    worst = std::max(worst, std::abs(Auroc(s) - testing::PairwiseAuroc(s.in, s.out)));
    worst = std::max(worst, std::abs(Aupr(s, PositiveSide::kIn) -
                                     testing::ThresholdSweepAp(s.in, s.out)));
    worst = std::max(worst, std::abs(Aupr(s, PositiveSide::kOut) -
                                     testing::ThresholdSweepAp(neg_out, neg_in)));
  }
  const double elapsed = Seconds(start);
  return {worst <= 1e-12 && elapsed < 5.0,
          Fmt("max |diff| %.3g over 200 score sets, %.2f s", worst, elapsed)};
}

// ------------------------------------------------------------------ 3

ShiftScenario RandomScenario(std::mt19937_64& rng, uint64_t seed) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ShiftScenario sc;
  sc.k = 2 + static_cast<int>(rng() % 9);
  sc.n = 100 + rng() % 300;
  sc.margin = 0.5 + 4.0 * u(rng);
  sc.noise = 0.5 + u(rng);
  sc.overconfidence = 1.0 + 3.0 * u(rng);
  sc.seed = seed;
  return sc;
}

Outcome AccuracyPreservation() {
  std::mt19937_64 rng(3);
  size_t rows = 0;
  size_t mismatches = 0;
  for (uint64_t d = 0; d < 100; ++d) {
    ShiftScenario sc = RandomScenario(rng, 10 * d);
    const LogitDataset val = Generate(sc);
    ShiftScenario ood_sc = sc;
    ood_sc.kind = ShiftKind::kSemantic;
    ood_sc.seed = sc.seed + 1;
    const LogitDataset ood = Generate(ood_sc);
    ShiftScenario test_sc = sc;
    test_sc.kind = ShiftKind::kCovariate;
    test_sc.severity = static_cast<int>(d % 6);
    test_sc.seed = sc.seed + 2;
    const LogitDataset test = Generate(test_sc);

    const Calibrator c = FitCalibrator("energy", val, &ood, kDefaultBins);
    const auto predictions = ApplyCalibrator(c, test);
    for (size_t i = 0; i < test.size(); ++i) {
      ++rows;
      if (predictions[i].predicted_label != ArgMax(test.row(i))) ++mismatches;
    }
  }
  return {mismatches == 0,
          Fmt("%.0f of %.0f rows changed label across 100 datasets",
              static_cast<double>(mismatches), static_cast<double>(rows))};
}

// ------------------------------------------------------------------ 4

Outcome ReductionToTemperatureScaling() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  size_t label_mismatches = 0;
  for (int trial = 0; trial < 50; ++trial) {
    ShiftScenario sc = RandomScenario(rng, 7000 + static_cast<uint64_t>(trial));
    const LogitDataset val = Generate(sc);
    ShiftScenario ood_sc = sc;
    ood_sc.kind = ShiftKind::kSemantic;
    const LogitDataset ood = Generate(ood_sc);
    EnergyCalibratorParams params =
        FitEnergyCalibrator(val, ood, FitTemperature(val));
    params.theta1 = 0.0;
    params.theta2 = 0.0;
    std::normal_distribution<double> normal(0.0, 1.0 + 20.0 * u(rng));
    for (int r = 0; r < 200; ++r) {
      std::vector<double> z(static_cast<size_t>(sc.k));
      for (double& v : z) v = normal(rng);
      const Prediction calibrated = Apply(params, z);
      const Prediction ts = Predict(z, params.t_ts);
      if (calibrated.predicted_label != ts.predicted_label) ++label_mismatches;
      worst = std::max(worst, std::abs(calibrated.confidence - ts.confidence));
      for (size_t c = 0; c < z.size(); ++c) {
        worst = std::max(worst, std::abs(calibrated.probabilities[c] -
                                         ts.probabilities[c]));
      }
    }
  }
  return {worst <= 1e-12 && label_mismatches == 0,
          Fmt("max |diff| %.3g over 10000 inputs, %.0f label mismatches", worst,
              static_cast<double>(label_mismatches))};
}

// ------------------------------------------------------------------ 5

Outcome NllIdentity() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const size_t k = 2 + rng() % 19;
    std::vector<double> z(k);
    for (double& v : z) v = u(rng);
    const int y = static_cast<int>(rng() % k);
    worst = std::max(worst, NllIdentityResidual(z, y));
  }
  return {worst <= 1e-9, Fmt("max residual %.3g over 10000 samples", worst)};
}

// ------------------------------------------------------------------ 6

Outcome EnergySeparability() {
  const auto start = Clock::now();
  const cli::BenchConfig config;
  double correct_sum = 0.0;
  double incorrect_sum = 0.0;
  std::vector<double> neg_energy(kMaxSeverity + 1, 0.0);
  for (int s = 0; s < config.seeds; ++s) {
    const auto suite = SeveritySuite(config.ScenarioForSeed(s));
    double correct = 0.0;
    double incorrect = 0.0;
    size_t n_correct = 0;
    size_t n_incorrect = 0;
    const LogitDataset& id = suite[0];
    for (size_t i = 0; i < id.size(); ++i) {
      const double f = Energy(id.row(i)).value;
      if (ArgMax(id.row(i)) == id.label(i)) {
        correct += f;
        ++n_correct;
      } else {
        incorrect += f;
        ++n_incorrect;
      }
    }
    correct_sum += correct / static_cast<double>(n_correct);
    incorrect_sum += incorrect / static_cast<double>(n_incorrect);
    for (int level = 0; level <= kMaxSeverity; ++level) {
      const LogitDataset& ds = suite[static_cast<size_t>(level)];
      double total = 0.0;
      for (size_t i = 0; i < ds.size(); ++i) total -= Energy(ds.row(i)).value;
      neg_energy[static_cast<size_t>(level)] +=
          total / static_cast<double>(ds.size()) / config.seeds;
    }
  }
  const double mean_correct = correct_sum / config.seeds;
  const double mean_incorrect = incorrect_sum / config.seeds;
  bool decreasing = true;
  for (size_t s = 1; s < neg_energy.size(); ++s) {
    decreasing = decreasing && neg_energy[s] < neg_energy[s - 1];
  }
  const double elapsed = Seconds(start);
  std::string detail =
      Fmt("mean F correct %.3f vs incorrect %.3f; mean -F by severity:",
          mean_correct, mean_incorrect);
  for (const double v : neg_energy) detail += Fmt(" %.3f", v);
  detail += Fmt("; %.2f s", elapsed);
  return {mean_correct < mean_incorrect && decreasing && elapsed < 10.0, detail};
}

// ------------------------------------------------------------------ 7-10

struct BenchRun {
  cli::BenchResult result;
  double seconds = 0.0;
};

BenchRun RunDefaultBench() {
  cli::BenchConfig config;
  config.methods = {"none", "ts", "energy"};
  const auto start = Clock::now();
  cli::BenchResult result = cli::RunBench(config);
  return {std::move(result), Seconds(start)};
}

constexpr size_t kNone = 0;
constexpr size_t kTs = 1;
constexpr size_t kEnergy = 2;

Outcome IdCalibrationImprovement(const BenchRun& run) {
  const double none = run.result.MeanEce(kNone, 0);
  const double ts = run.result.MeanEce(kTs, 0);
  const double energy = run.result.MeanEce(kEnergy, 0);
  const double ts_reduction = 1.0 - ts / none;
  const double energy_reduction = 1.0 - energy / none;
  return {ts_reduction >= 0.5 && energy_reduction >= 0.5 && run.seconds < 30.0,
          Fmt("severity-0 ECE none %.3f, ts %.3f (%+.1f%%), energy %.3f",
              none, ts, -100.0 * ts_reduction, energy) +
              Fmt(" (%+.1f%%), required -50%%; bench %.2f s",
                  -100.0 * energy_reduction, run.seconds)};
}

Outcome SeverityRobustness(const BenchRun& run) {
  const double ts = run.result.MeanSeverityAveragedEce(kTs);
  const double energy = run.result.MeanSeverityAveragedEce(kEnergy);
  return {energy <= ts + 0.1 && run.seconds < 60.0,
          Fmt("severity-averaged ECE energy %.3f vs ts %.3f (margin %.3f); "
              "bench %.2f s",
              energy, ts, ts - energy, run.seconds)};
}

Outcome SemanticOodConfidence(const BenchRun& run) {
  const double ts = run.result.MeanOodConfidence(kTs);
  const double energy = run.result.MeanOodConfidence(kEnergy);
  return {energy < ts,
          Fmt("mean OOD confidence energy %.4f vs ts %.4f", energy, ts)};
}

Outcome OptimizerSoundness(const BenchRun& run) {
  double worst_gap = -INFINITY;
  double worst_origin = -INFINITY;
  for (const cli::SeedRun& seed : run.result.seeds) {
    const auto& params =
        std::get<EnergyCalibratorParams>(seed.methods[kEnergy].calibrator);
    const double achieved = EnergyCalibrationLoss(params, seed.val, seed.ood_tune);
    EnergyCalibratorParams probe = params;
    probe.theta1 = probe.theta2 = 0.0;
    const double origin = EnergyCalibrationLoss(probe, seed.val, seed.ood_tune);
    double grid_min = INFINITY;
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= 40; ++j) {
        probe.theta1 = 0.25 * i;
        probe.theta2 = 0.25 * j;
        grid_min = std::min(
            grid_min, EnergyCalibrationLoss(probe, seed.val, seed.ood_tune));
      }
    }
    worst_gap = std::max(worst_gap, achieved - grid_min);
    worst_origin = std::max(worst_origin, achieved - origin);
  }
  return {worst_gap <= 1e-6 && worst_origin <= 0.0,
          Fmt("max (loss - grid min) %.3g, max (loss - loss at origin) %.3g "
              "over %.0f fits",
              worst_gap, worst_origin,
              static_cast<double>(run.result.seeds.size()))};
}

// ------------------------------------------------------------------ 11

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Outcome CommandDeterminism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "enercal_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto p = [&](const std::string& name) { return (dir / name).string(); };
  std::ostringstream sink;
  int failures = 0;
  std::string mismatched;
  for (int round = 0; round < 2; ++round) {
    const std::string r = std::to_string(round);
    const std::vector<std::vector<std::string>> commands = {
        {"enercal", "gen", "--seed", "3", "--out", p("val" + r + ".csv")},
        {"enercal", "gen", "--seed", "4", "--kind", "semantic", "--out",
         p("ood" + r + ".csv")},
        {"enercal", "fit", "--method", "energy", "--val", p("val0.csv"),
         "--ood", p("ood0.csv"), "--out", p("fit" + r + ".json")},
        {"enercal", "bench", "--out", p("bench" + r + ".csv")},
    };
    for (const auto& args : commands) {
      if (cli::RunCli(args, sink, sink) != cli::kExitOk) ++failures;
    }
  }
  for (const std::string stem : {"val", "ood"}) {
    if (Slurp(p(stem + "0.csv")) != Slurp(p(stem + "1.csv"))) mismatched += " " + stem;
  }
  if (Slurp(p("fit0.json")) != Slurp(p("fit1.json"))) mismatched += " fit";
  if (Slurp(p("bench0.csv")) != Slurp(p("bench1.csv"))) mismatched += " bench";
  const bool nonempty = !Slurp(p("bench0.csv")).empty() && !Slurp(p("fit0.json")).empty();
  fs::remove_all(dir);
  const bool pass = failures == 0 && mismatched.empty() && nonempty;
  return {pass, pass ? std::string("gen, fit and bench outputs byte-identical")
                     : "failures " + std::to_string(failures) +
                           ", mismatched:" + mismatched};
}

}  // namespace
}  // namespace enercal

int main() {
  using enercal::Outcome;
  int failed = 0;
  const auto report = [&](int id, const char* name, const Outcome& outcome) {
    std::printf("[%s] criterion %2d  %-34s %s\n", outcome.pass ? "PASS" : "FAIL",
                id, name, outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failed;
  };
  report(1, "ECE/SCE oracle equivalence", enercal::CalibrationMetricOracles());
  report(2, "AUROC/AUPR oracle equivalence", enercal::RankingMetricOracles());
  report(3, "accuracy preservation", enercal::AccuracyPreservation());
  report(4, "reduction to temperature scaling",
         enercal::ReductionToTemperatureScaling());
  report(5, "NLL identity", enercal::NllIdentity());
  report(6, "energy separability", enercal::EnergySeparability());
  const enercal::BenchRun bench = enercal::RunDefaultBench();
  report(7, "ID calibration improvement", enercal::IdCalibrationImprovement(bench));
  report(8, "robustness across severities", enercal::SeverityRobustness(bench));
  report(9, "semantic-OOD confidence", enercal::SemanticOodConfidence(bench));
  report(10, "optimizer soundness", enercal::OptimizerSoundness(bench));
  report(11, "command determinism", enercal::CommandDeterminism());
  std::printf("%d of 11 criteria passed\n", 11 - failed);
  return failed == 0 ? 0 : 1;
}
