// Copyright 2026 The mlprior Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MLPRIOR_HARNESS_H_
#define MLPRIOR_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mlprior/dataset.h"
#include "mlprior/decoder.h"
#include "mlprior/model_io.h"
#include "mlprior/trainer.h"

namespace mlprior {

// Where a dataset lives. Relative paths and Mulan names resolve against the
// data root ($MLPRIOR_DATA_DIR unless overridden).
struct DatasetRef {
  enum class Format { kMulan, kSvmlight };
  Format format = Format::kMulan;
  std::string name;  // Mulan: <name>-{train,test}.arff + <name>.xml
  std::string train_path;
  std::string test_path;
  std::string xml_path;
  int num_labels = 0;  // svmlight only
  bool one_based = true;
  int dim = 0;
};

MultiLabelDataset LoadDataset(const DatasetRef& ref,
                              const std::optional<std::filesystem::path>& root);

enum class SelectionRegime { kSingle, kMultiple };

struct HyperGrid {
  std::vector<double> lambda_W;
  std::vector<double> lambda_A;
  std::vector<double> step0;

  std::size_t size() const { return lambda_W.size() * lambda_A.size() * step0.size(); }
};

struct ExperimentSpec {
  std::string name = "experiment";
  DatasetRef dataset;
  TrainConfig train;
  HyperGrid grid;
  LossKind selection = LossKind::F1();
  SelectionRegime regime = SelectionRegime::kSingle;
  double validation_fraction = 0.2;
  bool scale_features = false;
  std::uint64_t seed = 0;

  // JSON experiment file; throws InvalidArgument with the offending key.
  static ExperimentSpec Parse(const std::string& json_text,
                              const std::string& source = "<memory>");
  static ExperimentSpec Load(const std::filesystem::path& path);
  void Validate() const;
  std::string ToJson() const;
};

struct SplitMetrics {
  std::string split;
  int count = 0;
  double f1_loss = 0.0;
  double hamming_loss = 0.0;
  std::vector<double> label_error;  // per-label error rate
};

SplitMetrics ComputeMetrics(std::string split, std::span<const Labeling> predicted,
                            std::span<const Labeling> truth);

// Record lines ("<kind> key=value ...") plus timing lines kept apart so
// that runs can be compared byte for byte without them.
struct Report {
  std::vector<std::string> records;
  std::vector<std::string> timings;

  void Add(std::string line) { records.push_back(std::move(line)); }
  void AddTiming(const std::string& phase, double seconds);
  void AddMetrics(const SplitMetrics& m, const std::vector<std::string>& label_names);
  // Timing lines vary between runs; leave them out for byte-stable files.
  std::string Render(bool with_timings = true) const;
};

std::string Provenance();

struct RunOptions {
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::optional<std::filesystem::path> data_root;
};

struct GridCell {
  double lambda_W = 0.0;
  double lambda_A = 0.0;
  double step0 = 0.0;
  SplitMetrics valid;
};

struct TrainOutcome {
  ModelFile model;
  Report report;
  std::vector<GridCell> cells;
  // Index of the selected cell; per label in the multiple regime.
  std::vector<int> selected;
  SplitMetrics test;
};

// Grid search on the validation split, retrain on train + valid, test.
TrainOutcome RunTrain(const ExperimentSpec& spec, const RunOptions& options);
TrainOutcome RunTrain(const ExperimentSpec& spec, const MultiLabelDataset& data,
                      const RunOptions& options);

DecoderOptions DecoderFromModel(const ModelFile& model);

std::vector<Labeling> RunPredict(const ModelFile& model,
                                 const MultiLabelDataset& data, Split split,
                                 const RunOptions& options,
                                 std::optional<DecoderKind> decoder = std::nullopt);

// One line per instance: positive label names separated by spaces.
std::string FormatPredictions(const std::vector<Labeling>& predictions,
                              const std::vector<std::string>& label_names);

Report RunEval(const ModelFile& model, const MultiLabelDataset& data, Split split,
               const RunOptions& options,
               std::optional<DecoderKind> decoder = std::nullopt);

struct BenchSpec {
  int num_labels = 10;
  int trials = 20;
  std::vector<DecoderKind> decoders = {DecoderKind::kExhaustive};
  // "any" draws A off-diagonal from N(0,1); "nonpos" from -|N(0,1)|.
  SignConstraint prior = SignConstraint::kAny;
  // Cardinality row u^T 1 = 2k - V with k = V / 2.
  bool cardinality = false;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct BenchRow {
  DecoderKind decoder;
  int trial = 0;
  double exact = 0.0;       // NaN when enumeration is off
  double relaxation = 0.0;
  double rounded = 0.0;
  bool feasible = true;
  double seconds = 0.0;
};

struct BenchOutcome {
  std::vector<BenchRow> rows;
  Report report;
};

QboProblem RandomBenchProblem(const BenchSpec& spec, int trial);
BenchOutcome BenchDecode(const BenchSpec& spec);

}  // namespace mlprior

#endif  // MLPRIOR_HARNESS_H_
