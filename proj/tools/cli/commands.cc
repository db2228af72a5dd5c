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

#include "cli/commands.h"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "cli/bench.h"
#include "enercal/calibrator_json.h"
#include "enercal/calibrators.h"
#include "enercal/dataset.h"
#include "enercal/error.h"
#include "enercal/metrics.h"
#include "enercal/number_format.h"
#include "enercal/synthetic.h"

namespace enercal::cli {
namespace {

// Flag values that parse but are semantically invalid.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out.flush()) throw IoError("write failed: " + path.string());
}

std::string Cell(std::optional<double> v) {
  return v ? FormatDouble(*v) : std::string();
}

struct GenFlags {
  ShiftScenario scenario;
  std::string kind = "id";
  std::string out;
};

struct FitFlags {
  std::string method;
  std::string val;
  std::string ood;
  std::string out;
  int bins = kDefaultBins;
};

struct ApplyFlags {
  std::string params;
  std::string data;
  std::string out;
};

struct EvalFlags {
  std::string params;
  std::string data;
  std::string ood;
  std::string out;
  std::string reliability;
  std::string score = "confidence";
  int bins = kDefaultBins;
};

struct BenchFlags {
  BenchConfig config;
  std::string methods = "ts,energy";
  std::string out;
};

void RunGen(const GenFlags& flags) {
  ShiftScenario scenario = flags.scenario;
  try {
    scenario.kind = ParseShiftKind(flags.kind);
    scenario.Validate();
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
  SaveCsv(Generate(scenario), flags.out);
}

void RunFit(const FitFlags& flags) {
  if (flags.method == "energy" && flags.ood.empty()) {
    throw UsageError("--method energy requires --ood");
  }
  if (flags.bins < 1) throw UsageError("--bins must be at least 1");
  const LogitDataset val = LoadCsv(flags.val);
  std::optional<LogitDataset> ood;
  if (flags.method == "energy") ood = LoadCsv(flags.ood);
  const Calibrator calibrator =
      FitCalibrator(flags.method, val, ood ? &*ood : nullptr, flags.bins);
  SaveCalibrator(calibrator, flags.out);
}

std::string FormatPredictions(const std::vector<Prediction>& predictions,
                              int k) {
  std::string out = "row,pred_label,confidence";
  for (int c = 0; c < k; ++c) out += ",p" + std::to_string(c);
  out += '\n';
  for (size_t i = 0; i < predictions.size(); ++i) {
    const Prediction& p = predictions[i];
    out += std::to_string(i) + "," + std::to_string(p.predicted_label) + "," +
           FormatDouble(p.confidence);
    for (const double v : p.probabilities) out += "," + FormatDouble(v);
    out += '\n';
  }
  return out;
}

void RunApply(const ApplyFlags& flags) {
  const Calibrator calibrator = LoadCalibrator(flags.params);
  const LogitDataset data = LoadCsv(flags.data);
  WriteTextFile(flags.out,
                FormatPredictions(ApplyCalibrator(calibrator, data), data.k()));
}

std::vector<double> OodScore(const std::string& score, const LogitDataset& ds,
                             const std::vector<Prediction>& predictions) {
  std::vector<double> out;
  for (size_t i = 0; i < ds.size(); ++i) {
    out.push_back(score == "energy" ? -Energy(ds.row(i)).value
                                    : predictions[i].confidence);
  }
  return out;
}

void RunEval(const EvalFlags& flags) {
  if (flags.bins < 1) throw UsageError("--bins must be at least 1");
  const Calibrator calibrator = LoadCalibrator(flags.params);
  const std::string kind(KindName(calibrator));
  const LogitDataset data = LoadCsv(flags.data);
  if (!data.fully_labeled()) {
    throw ArgumentError("--data must be fully labeled; pass OOD rows via --ood");
  }
  const auto predictions = ApplyCalibrator(calibrator, data);
  const BinStats bins = BinPredictions(predictions, data.labels(), flags.bins);

  std::string report =
      "dataset,calibrator,n,accuracy,mean_confidence,ece,mce,sce,auroc,"
      "aupr_in,aupr_out\n";
  report += "data," + kind + "," + std::to_string(data.size()) + "," +
            FormatDouble(Accuracy(predictions, data.labels())) + "," +
            FormatDouble(MeanConfidence(predictions)) + "," +
            FormatDouble(Ece(bins, data.size())) + "," +
            FormatDouble(Mce(bins)) + "," +
            FormatDouble(Sce(predictions, data.labels(), flags.bins)) +
            ",,,\n";
  if (!flags.ood.empty()) {
    const LogitDataset ood = LoadCsv(flags.ood);
    const auto ood_predictions = ApplyCalibrator(calibrator, ood);
    const OodScores scores{OodScore(flags.score, data, predictions),
                           OodScore(flags.score, ood, ood_predictions)};
    report += "ood," + kind + "," + std::to_string(ood.size()) + ",," +
              FormatDouble(MeanConfidence(ood_predictions)) + ",,,," +
              FormatDouble(Auroc(scores)) + "," +
              FormatDouble(Aupr(scores, PositiveSide::kIn)) + "," +
              FormatDouble(Aupr(scores, PositiveSide::kOut)) + "\n";
  }
  WriteTextFile(flags.out, report);

  if (!flags.reliability.empty()) {
    std::string table = "bin,lower,upper,count,confidence,accuracy\n";
    for (const ReliabilityRow& row : ReliabilityTable(bins)) {
      table += std::to_string(row.bin) + "," + FormatDouble(row.lower) + "," +
               FormatDouble(row.upper) + "," + std::to_string(row.count) +
               "," + Cell(row.confidence) + "," + Cell(row.accuracy) + "\n";
    }
    WriteTextFile(flags.reliability, table);
  }
}

void RunBenchCommand(BenchFlags flags) {
  flags.config.methods.clear();
  std::stringstream tokens(flags.methods);
  std::string token;
  while (std::getline(tokens, token, ',')) {
    if (!token.empty()) flags.config.methods.push_back(token);
  }
  try {
    flags.config.Validate();
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
  WriteTextFile(flags.out, FormatBenchCsv(RunBench(flags.config)));
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Energy-based instance-wise calibration toolkit", "enercal"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic logit dataset");
  gen_cmd->alias("gen-synthetic");
  gen_cmd->add_option("--k", gen.scenario.k, "Class count")->capture_default_str();
  gen_cmd->add_option("--n", gen.scenario.n, "Row count")->capture_default_str();
  gen_cmd->add_option("--margin", gen.scenario.margin, "True-class logit boost")
      ->capture_default_str();
  gen_cmd->add_option("--noise", gen.scenario.noise, "Noise std at severity 0")
      ->capture_default_str();
  gen_cmd->add_option("--overconfidence", gen.scenario.overconfidence,
                      "Global logit multiplier")
      ->capture_default_str();
  gen_cmd->add_option("--severity", gen.scenario.severity, "Shift severity 0..5")
      ->capture_default_str();
  gen_cmd->add_option("--kind", gen.kind, "id, covariate or semantic")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.scenario.seed, "Generator seed")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output CSV")->required();

  FitFlags fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a calibrator");
  fit_cmd->add_option("--method", fit.method, "ts, energy, hb, irova or ets")
      ->required()
      ->check(CLI::IsMember({"ts", "energy", "hb", "irova", "ets"}));
  fit_cmd->add_option("--val", fit.val, "Labeled validation CSV")->required();
  fit_cmd->add_option("--ood", fit.ood, "Semantic OOD CSV (energy only)");
  fit_cmd->add_option("--bins", fit.bins, "Bin count for hb")->capture_default_str();
  fit_cmd->add_option("--out", fit.out, "Output JSON")->required();

  ApplyFlags apply;
  auto* apply_cmd = app.add_subcommand("apply", "Apply a fitted calibrator");
  apply_cmd->add_option("--params", apply.params, "Calibrator JSON")->required();
  apply_cmd->add_option("--data", apply.data, "Logit CSV")->required();
  apply_cmd->add_option("--out", apply.out, "Predictions CSV")->required();

  EvalFlags eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate calibration metrics");
  eval_cmd->add_option("--params", eval.params, "Calibrator JSON")->required();
  eval_cmd->add_option("--data", eval.data, "Labeled logit CSV")->required();
  eval_cmd->add_option("--ood", eval.ood, "Semantic OOD CSV");
  eval_cmd->add_option("--bins", eval.bins, "Bin count")->capture_default_str();
  eval_cmd->add_option("--out", eval.out, "Report CSV")->required();
  eval_cmd->add_option("--reliability", eval.reliability, "Reliability CSV");
  eval_cmd->add_option("--score", eval.score, "OOD score: confidence or energy")
      ->capture_default_str()
      ->check(CLI::IsMember({"confidence", "energy"}));

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the severity benchmark");
  bench_cmd->add_option("--k", bench.config.k, "Class count")->capture_default_str();
  bench_cmd->add_option("--n", bench.config.n, "Rows per generated set")
      ->capture_default_str();
  bench_cmd->add_option("--seeds", bench.config.seeds, "Number of seeds")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.config.base_seed, "Base seed")
      ->capture_default_str();
  bench_cmd->add_option("--methods", bench.methods,
                        "Comma list of none, ts, energy, hb, irova, ets")
      ->capture_default_str();
  bench_cmd->add_option("--margin", bench.config.margin)->capture_default_str();
  bench_cmd->add_option("--noise", bench.config.noise)->capture_default_str();
  bench_cmd->add_option("--overconfidence", bench.config.overconfidence)
      ->capture_default_str();
  bench_cmd->add_option("--val-fraction", bench.config.val_fraction,
                        "Severity-0 share used for fitting")
      ->capture_default_str();
  bench_cmd->add_option("--ood-n", bench.config.ood_n,
                        "Tuning OOD rows (0: validation size)")
      ->capture_default_str();
  bench_cmd->add_option("--bins", bench.config.bins)->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Report CSV")->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) RunGen(gen);
    if (fit_cmd->parsed()) RunFit(fit);
    if (apply_cmd->parsed()) RunApply(apply);
    if (eval_cmd->parsed()) RunEval(eval);
    if (bench_cmd->parsed()) RunBenchCommand(bench);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace enercal::cli
