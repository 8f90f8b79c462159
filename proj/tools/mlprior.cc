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

// mlprior command-line front end: train, predict, eval, bench-decode.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlprior/dataset.h"
#include "mlprior/errors.h"
#include "mlprior/harness.h"
#include "mlprior/model_io.h"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;
constexpr int kExitOther = 1;

struct Common {
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out;
  std::string data_root;

  mlprior::RunOptions Options() const {
    mlprior::RunOptions o;
    o.seed = seed;
    o.threads = threads;
    if (!data_root.empty()) {
      o.data_root = std::filesystem::path(data_root);
    } else {
      o.data_root = mlprior::DataRoot();
    }
    return o;
  }
};

void AddCommon(CLI::App* cmd, Common* c, const std::string& out_help) {
  cmd->add_option("--seed", c->seed, "Random seed (overrides the spec)");
  cmd->add_option("--threads", c->threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--out", c->out, out_help);
  cmd->add_option("--data-root", c->data_root,
                  std::string("Dataset root (default: $") +
                      mlprior::kDataRootVariable + ")");
}

struct DataChoice {
  std::string spec;
  std::string dataset;
  std::string svmlight;
  int num_labels = 0;
  bool zero_based = false;
  std::string split = "test";
};

void AddDataOptions(CLI::App* cmd, DataChoice* d) {
  auto* spec = cmd->add_option("--spec", d->spec, "Experiment file whose dataset to use");
  auto* ds = cmd->add_option("--dataset", d->dataset, "Mulan dataset name under the data root");
  auto* svm = cmd->add_option("--svmlight", d->svmlight, "svmlight multilabel file");
  spec->excludes(ds)->excludes(svm);
  ds->excludes(svm);
  cmd->add_option("--num-labels", d->num_labels, "Label count for --svmlight");
  cmd->add_flag("--zero-based", d->zero_based, "svmlight feature indices start at 0");
  cmd->add_option("--split", d->split, "train, valid or test")->capture_default_str();
}

mlprior::MultiLabelDataset LoadChosen(const DataChoice& d, const mlprior::RunOptions& o,
                                      const mlprior::ModelFile& model,
                                      mlprior::Split split) {
  if (!d.svmlight.empty()) {
    mlprior::SvmlightOptions so;
    so.one_based = !d.zero_based;
    so.dim = model.params.dim();
    so.tag = split;
    const int v = d.num_labels > 0 ? d.num_labels : model.params.num_labels();
    std::filesystem::path p(d.svmlight);
    if (p.is_relative() && o.data_root && !std::filesystem::exists(p)) p = *o.data_root / p;
    auto ds = mlprior::LoadSvmlightMultilabel(p, v, so);
    if (static_cast<int>(model.label_names.size()) == v) ds.label_names = model.label_names;
    return ds;
  }
  mlprior::DatasetRef ref;
  if (!d.spec.empty()) {
    ref = mlprior::ExperimentSpec::Load(d.spec).dataset;
  } else if (!d.dataset.empty()) {
    ref.name = d.dataset;
  } else {
    throw mlprior::InvalidArgument("choose a dataset with --spec, --dataset or --svmlight");
  }
  return mlprior::LoadDataset(ref, o.data_root);
}

void WriteOrPrint(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw mlprior::InputError("cannot write " + path);
  out << text;
}

// Wall-clock lines go to a side channel so result files stay byte-stable.
std::string TimingLines(const mlprior::Report& report) {
  std::string out;
  for (const auto& t : report.timings) out += t + "\n";
  return out;
}

std::vector<mlprior::DecoderKind> ParseDecoderList(const std::string& text) {
  std::vector<mlprior::DecoderKind> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(mlprior::ParseDecoderKind(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mlprior: multilabel structured prediction with a learned label prior"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("mlprior ") + mlprior::Provenance());

  Common train_c, predict_c, eval_c, bench_c;
  std::string spec_path;
  auto* train = app.add_subcommand("train", "Grid search, retrain on train+valid, test");
  train->add_option("--spec", spec_path, "Experiment file (JSON)")->required();
  AddCommon(train, &train_c, "Output directory for model.txt and report.txt");

  std::string model_path;
  DataChoice predict_d, eval_d;
  std::string eval_decoder;
  auto* predict = app.add_subcommand("predict", "Write predicted label names per instance");
  predict->add_option("--model", model_path, "Model file")->required();
  AddDataOptions(predict, &predict_d);
  AddCommon(predict, &predict_c, "Predictions file (default: stdout)");

  auto* eval = app.add_subcommand("eval", "Report F1 and Hamming losses on a split");
  eval->add_option("--model", model_path, "Model file")->required();
  eval->add_option("--decoder", eval_decoder, "Override the model's decoder");
  AddDataOptions(eval, &eval_d);
  AddCommon(eval, &eval_c, "Report file (default: stdout)");

  mlprior::BenchSpec bench_spec;
  std::string bench_decoders = "exhaustive";
  std::string bench_prior = "any";
  auto* bench = app.add_subcommand("bench-decode", "Compare decoders on random problems");
  bench->add_option("--labels", bench_spec.num_labels, "Number of labels V")
      ->capture_default_str();
  bench->add_option("--trials", bench_spec.trials, "Random problems")->capture_default_str();
  bench->add_option("--decoders", bench_decoders, "Comma-separated decoder list")
      ->capture_default_str();
  bench->add_option("--prior", bench_prior, "Prior sign: any, nonpos, nonneg or zero")
      ->capture_default_str();
  bench->add_flag("--cardinality", bench_spec.cardinality, "Add the row u^T 1 = 2 floor(V/2) - V");
  AddCommon(bench, &bench_c, "Table file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*train) {
      const auto spec = mlprior::ExperimentSpec::Load(spec_path);
      const auto result = mlprior::RunTrain(spec, train_c.Options());
      const std::filesystem::path dir = train_c.out.empty() ? "." : train_c.out;
      std::filesystem::create_directories(dir);
      mlprior::SaveModel(result.model, dir / "model.txt");
      WriteOrPrint((dir / "report.txt").string(), result.report.Render(false));
      WriteOrPrint((dir / "timing.txt").string(), TimingLines(result.report));
      std::cout << result.report.Render();
    } else if (*predict) {
      const auto opts = predict_c.Options();
      const auto model = mlprior::LoadModel(model_path);
      const auto split = mlprior::ParseSplit(predict_d.split);
      const auto data = LoadChosen(predict_d, opts, model, split);
      const auto pred = mlprior::RunPredict(model, data, split, opts);
      WriteOrPrint(predict_c.out, mlprior::FormatPredictions(pred, model.label_names));
    } else if (*eval) {
      const auto opts = eval_c.Options();
      const auto model = mlprior::LoadModel(model_path);
      const auto split = mlprior::ParseSplit(eval_d.split);
      const auto data = LoadChosen(eval_d, opts, model, split);
      std::optional<mlprior::DecoderKind> dec;
      if (!eval_decoder.empty()) dec = mlprior::ParseDecoderKind(eval_decoder);
      const auto report = mlprior::RunEval(model, data, split, opts, dec);
      WriteOrPrint(eval_c.out, report.Render(false));
      std::cerr << TimingLines(report);
    } else if (*bench) {
      bench_spec.decoders = ParseDecoderList(bench_decoders);
      bench_spec.prior = mlprior::ParseSignConstraint(bench_prior);
      bench_spec.seed = bench_c.seed.value_or(0);
      bench_spec.threads = bench_c.threads;
      const auto outcome = mlprior::BenchDecode(bench_spec);
      WriteOrPrint(bench_c.out, outcome.report.Render(false));
      std::cerr << TimingLines(outcome.report);
    }
  } catch (const mlprior::InputError& e) {
    std::cerr << "mlprior: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const mlprior::SolverError& e) {
    std::cerr << "mlprior: solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "mlprior: error: " << e.what() << "\n";
    return kExitOther;
  }
  return 0;
}
