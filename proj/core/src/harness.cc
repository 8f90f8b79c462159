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

#include "mlprior/harness.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mlprior/errors.h"
#include "mlprior/exhaustive.h"
#include "mlprior/losses.h"
#include "mlprior/random.h"
#include "parallel.h"

#ifndef MLPRIOR_VERSION
#define MLPRIOR_VERSION "unknown"
#endif
#ifndef MLPRIOR_GIT_REVISION
#define MLPRIOR_GIT_REVISION "unknown"
#endif

namespace mlprior {
namespace {

using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::filesystem::path Resolve(const std::string& p,
                              const std::optional<std::filesystem::path>& root) {
  std::filesystem::path path(p);
  if (path.is_absolute() || !root) return path;
  return *root / path;
}

// Rejects keys outside `allowed` so that typos in experiment files fail.
void CheckKeys(const Json& j, std::initializer_list<const char*> allowed,
               const std::string& where) {
  if (!j.is_object()) throw InvalidArgument(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; })) {
      throw InvalidArgument(where + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
T Get(const Json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(where + "." + key + ": " + e.what());
  }
}

std::vector<double> GetList(const Json& j, const char* key,
                            const std::string& where) {
  if (!j.contains(key)) return {};
  const Json& v = j.at(key);
  try {
    if (v.is_number()) return {v.get<double>()};
    return v.get<std::vector<double>>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(where + "." + key + ": " + e.what());
  }
}

std::string_view BackendName(SdpBackend b) {
  switch (b) {
    case SdpBackend::kAuto: return "auto";
    case SdpBackend::kDualAdmm: return "admm";
    case SdpBackend::kBurerMonteiro: return "burer-monteiro";
  }
  return "auto";
}

SdpBackend ParseBackend(const std::string& s) {
  if (s == "auto") return SdpBackend::kAuto;
  if (s == "admm") return SdpBackend::kDualAdmm;
  if (s == "burer-monteiro") return SdpBackend::kBurerMonteiro;
  throw InvalidArgument("unknown SDP backend '" + s + "'");
}

Json TrainToJson(const TrainConfig& c) {
  const DecoderOptions& d = c.decoder_options;
  return Json{{"loss", c.loss.ToString()},
              {"decoder", std::string(ToString(c.decoder))},
              {"sign", std::string(ToString(c.sign))},
              {"epochs", c.epochs},
              {"batch_size", c.batch_size},
              {"average", c.average_iterates},
              {"auto_exhaustive_labels", d.auto_exhaustive_labels},
              {"exhaustive_fallback_labels", d.exhaustive_fallback_labels},
              {"spectral_qr", d.spectral_qr},
              {"sdp",
               {{"backend", std::string(BackendName(d.sdp.backend))},
                {"tolerance", d.sdp.tolerance},
                {"max_iterations", d.sdp.max_iterations},
                {"samples", d.rounding_samples}}}};
}

TrainConfig TrainFromJson(const Json& j, const std::string& where) {
  CheckKeys(j,
            {"loss", "decoder", "sign", "epochs", "batch_size", "average",
             "auto_exhaustive_labels", "exhaustive_fallback_labels", "spectral_qr",
             "sdp", "lambda_W", "lambda_A", "step0"},
            where);
  TrainConfig c;
  c.loss = LossKind::Parse(Get<std::string>(j, "loss", "hamming", where));
  c.decoder = ParseDecoderKind(Get<std::string>(j, "decoder", "auto", where));
  c.sign = ParseSignConstraint(Get<std::string>(j, "sign", "any", where));
  c.epochs = Get<int>(j, "epochs", c.epochs, where);
  c.batch_size = Get<int>(j, "batch_size", c.batch_size, where);
  c.average_iterates = Get<bool>(j, "average", true, where);
  c.lambda_W = Get<double>(j, "lambda_W", c.lambda_W, where);
  c.lambda_A = Get<double>(j, "lambda_A", c.lambda_A, where);
  c.step0 = Get<double>(j, "step0", c.step0, where);
  DecoderOptions& d = c.decoder_options;
  d.auto_exhaustive_labels =
      Get<int>(j, "auto_exhaustive_labels", d.auto_exhaustive_labels, where);
  d.exhaustive_fallback_labels =
      Get<int>(j, "exhaustive_fallback_labels", d.exhaustive_fallback_labels, where);
  d.spectral_qr = Get<bool>(j, "spectral_qr", false, where);
  if (j.contains("sdp")) {
    const Json& s = j.at("sdp");
    const std::string w = where + ".sdp";
    CheckKeys(s, {"backend", "tolerance", "max_iterations", "samples"}, w);
    d.sdp.backend = ParseBackend(Get<std::string>(s, "backend", "auto", w));
    d.sdp.tolerance = Get<double>(s, "tolerance", d.sdp.tolerance, w);
    d.sdp.max_iterations = Get<int>(s, "max_iterations", d.sdp.max_iterations, w);
    d.rounding_samples = Get<int>(s, "samples", d.rounding_samples, w);
  }
  return c;
}

Json DatasetToJson(const DatasetRef& r) {
  Json j{{"format", r.format == DatasetRef::Format::kMulan ? "mulan" : "svmlight"}};
  if (!r.name.empty()) j["name"] = r.name;
  if (!r.train_path.empty()) j["train"] = r.train_path;
  if (!r.test_path.empty()) j["test"] = r.test_path;
  if (!r.xml_path.empty()) j["xml"] = r.xml_path;
  if (r.format == DatasetRef::Format::kSvmlight) {
    j["labels"] = r.num_labels;
    j["one_based"] = r.one_based;
    if (r.dim > 0) j["dim"] = r.dim;
  }
  return j;
}

DatasetRef DatasetFromJson(const Json& j, const std::string& where) {
  CheckKeys(j, {"format", "name", "train", "test", "xml", "labels", "one_based", "dim"},
            where);
  DatasetRef r;
  const std::string format = Get<std::string>(j, "format", "mulan", where);
  if (format == "mulan") {
    r.format = DatasetRef::Format::kMulan;
  } else if (format == "svmlight") {
    r.format = DatasetRef::Format::kSvmlight;
  } else {
    throw InvalidArgument(where + ".format: expected mulan or svmlight");
  }
  r.name = Get<std::string>(j, "name", "", where);
  r.train_path = Get<std::string>(j, "train", "", where);
  r.test_path = Get<std::string>(j, "test", "", where);
  r.xml_path = Get<std::string>(j, "xml", "", where);
  r.num_labels = Get<int>(j, "labels", 0, where);
  r.one_based = Get<bool>(j, "one_based", true, where);
  r.dim = Get<int>(j, "dim", 0, where);
  return r;
}

std::vector<Labeling> TruthFor(const MultiLabelDataset& data, Split split) {
  std::vector<Labeling> out;
  for (int i : data.Indices(split)) out.push_back(data.labelings[i]);
  return out;
}

double SelectionValue(const LossKind& kind, const SplitMetrics& m) {
  return kind.type() == LossKind::Type::kHamming ? m.hamming_loss : m.f1_loss;
}

Json MetricsJson(const SplitMetrics& m) {
  return Json{{"split", m.split},
              {"count", m.count},
              {"f1_loss", m.f1_loss},
              {"hamming_loss", m.hamming_loss}};
}

}  // namespace

MultiLabelDataset LoadDataset(const DatasetRef& ref,
                              const std::optional<std::filesystem::path>& root) {
  MultiLabelDataset ds;
  if (ref.format == DatasetRef::Format::kMulan) {
    if (!ref.train_path.empty()) {
      if (ref.xml_path.empty()) throw InvalidArgument("Mulan dataset needs an xml path");
      if (ref.test_path.empty()) {
        ds = LoadMulan(Resolve(ref.train_path, root), Resolve(ref.xml_path, root));
      } else {
        ds = LoadMulanTrainTest(Resolve(ref.train_path, root),
                                Resolve(ref.test_path, root),
                                Resolve(ref.xml_path, root));
      }
    } else {
      if (ref.name.empty()) throw InvalidArgument("dataset needs a name or paths");
      if (!root) {
        throw InputError("dataset '" + ref.name + "' needs a data root; set " +
                         std::string(kDataRootVariable));
      }
      const auto files = FindMulanDataset(*root, ref.name);
      if (!files) {
        throw InputError("dataset '" + ref.name + "' not found under " + root->string());
      }
      ds = LoadMulanTrainTest(files->train_arff, files->test_arff, files->xml);
    }
  } else {
    if (ref.train_path.empty()) throw InvalidArgument("svmlight dataset needs a train path");
    if (ref.num_labels <= 0) throw InvalidArgument("svmlight dataset needs 'labels'");
    SvmlightOptions opt{ref.one_based, ref.dim, Split::kTrain};
    ds = LoadSvmlightMultilabel(Resolve(ref.train_path, root), ref.num_labels, opt);
    if (!ref.test_path.empty()) {
      opt.tag = Split::kTest;
      MultiLabelDataset test =
          LoadSvmlightMultilabel(Resolve(ref.test_path, root), ref.num_labels, opt);
      if (ref.dim == 0 && test.dim != ds.dim) {
        // Re-read both at the common inferred dimension.
        opt.dim = std::max(ds.dim, test.dim);
        opt.tag = Split::kTrain;
        ds = LoadSvmlightMultilabel(Resolve(ref.train_path, root), ref.num_labels, opt);
        opt.tag = Split::kTest;
        test = LoadSvmlightMultilabel(Resolve(ref.test_path, root), ref.num_labels, opt);
      }
      for (int i = 0; i < test.size(); ++i) {
        ds.instances.push_back(std::move(test.instances[i]));
        ds.labelings.push_back(std::move(test.labelings[i]));
        ds.split.push_back(Split::kTest);
      }
    }
  }
  ds.Validate();
  return ds;
}

ExperimentSpec ExperimentSpec::Parse(const std::string& json_text,
                                     const std::string& source) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::exception& e) {
    throw InvalidArgument(source + ": not valid JSON: " + e.what());
  }
  CheckKeys(j,
            {"name", "seed", "dataset", "train", "grid", "selection", "regime",
             "validation_fraction", "scale_features"},
            source);
  ExperimentSpec s;
  s.name = Get<std::string>(j, "name", s.name, source);
  s.seed = Get<std::uint64_t>(j, "seed", 0, source);
  if (!j.contains("dataset")) throw InvalidArgument(source + ": missing 'dataset'");
  s.dataset = DatasetFromJson(j.at("dataset"), source + ".dataset");
  if (j.contains("train")) s.train = TrainFromJson(j.at("train"), source + ".train");
  if (!j.contains("grid")) throw InvalidArgument(source + ": missing 'grid'");
  const Json& g = j.at("grid");
  CheckKeys(g, {"lambda_W", "lambda_A", "step0"}, source + ".grid");
  s.grid.lambda_W = GetList(g, "lambda_W", source + ".grid");
  s.grid.lambda_A = GetList(g, "lambda_A", source + ".grid");
  s.grid.step0 = GetList(g, "step0", source + ".grid");
  // Unlisted axes take the single value from the train block.
  if (!g.contains("lambda_A")) s.grid.lambda_A = {s.train.lambda_A};
  if (!g.contains("step0")) s.grid.step0 = {s.train.step0};
  s.selection = LossKind::Parse(Get<std::string>(j, "selection", "f1", source));
  const std::string regime = Get<std::string>(j, "regime", "single", source);
  if (regime == "single") {
    s.regime = SelectionRegime::kSingle;
  } else if (regime == "multiple") {
    s.regime = SelectionRegime::kMultiple;
  } else {
    throw InvalidArgument(source + ".regime: expected single or multiple");
  }
  s.validation_fraction =
      Get<double>(j, "validation_fraction", s.validation_fraction, source);
  s.scale_features = Get<bool>(j, "scale_features", false, source);
  s.Validate();
  return s;
}

ExperimentSpec ExperimentSpec::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str(), path.string());
}

void ExperimentSpec::Validate() const {
  if (grid.lambda_W.empty() || grid.lambda_A.empty() || grid.step0.empty()) {
    throw InvalidArgument("hyperparameter grid is empty");
  }
  for (double x : grid.lambda_W) {
    if (!(x >= 0.0)) throw InvalidArgument("grid lambda_W must be >= 0");
  }
  for (double x : grid.lambda_A) {
    if (!(x >= 0.0)) throw InvalidArgument("grid lambda_A must be >= 0");
  }
  for (double x : grid.step0) {
    if (!(x > 0.0)) throw InvalidArgument("grid step0 must be > 0");
  }
  if (selection.type() == LossKind::Type::kFBeta) {
    throw InvalidArgument("selection loss must be f1 or hamming");
  }
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw InvalidArgument("validation_fraction must lie in (0, 1)");
  }
  if (regime == SelectionRegime::kMultiple) {
    if (train.sign != SignConstraint::kZero ||
        train.loss.type() != LossKind::Type::kHamming) {
      throw InvalidArgument(
          "the multiple regime needs sign 'zero' and loss 'hamming' (labels must decouple)");
    }
  }
  if (!DecoderSupports(train.decoder, train.sign)) {
    throw InvalidArgument("decoder 'mincut' requires sign nonpos or zero");
  }
}

std::string ExperimentSpec::ToJson() const {
  Json train_json = TrainToJson(train);
  Json j{{"name", name},
         {"seed", seed},
         {"dataset", DatasetToJson(dataset)},
         {"train", train_json},
         {"grid",
          {{"lambda_W", grid.lambda_W},
           {"lambda_A", grid.lambda_A},
           {"step0", grid.step0}}},
         {"selection", selection.ToString()},
         {"regime", regime == SelectionRegime::kSingle ? "single" : "multiple"},
         {"validation_fraction", validation_fraction},
         {"scale_features", scale_features}};
  return j.dump();
}

SplitMetrics ComputeMetrics(std::string split, std::span<const Labeling> predicted,
                            std::span<const Labeling> truth) {
  if (predicted.size() != truth.size()) {
    throw DimensionError("prediction and truth counts differ");
  }
  SplitMetrics m;
  m.split = std::move(split);
  m.count = static_cast<int>(truth.size());
  if (truth.empty()) return m;
  const int v = truth[0].size();
  m.label_error.assign(v, 0.0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    m.f1_loss += Loss(LossKind::F1(), predicted[i], truth[i]);
    m.hamming_loss += HammingLoss(predicted[i], truth[i]);
    for (int l = 0; l < v; ++l) m.label_error[l] += predicted[i][l] != truth[i][l];
  }
  const double n = static_cast<double>(truth.size());
  m.f1_loss /= n;
  m.hamming_loss /= n;
  for (double& e : m.label_error) e /= n;
  return m;
}

void Report::AddTiming(const std::string& phase, double seconds) {
  timings.push_back("timing phase=" + phase + " seconds=" + Fmt(seconds));
}

void Report::AddMetrics(const SplitMetrics& m,
                        const std::vector<std::string>& label_names) {
  Add("metric split=" + m.split + " n=" + std::to_string(m.count) +
      " f1_loss=" + Fmt(m.f1_loss) + " hamming_loss=" + Fmt(m.hamming_loss));
  for (std::size_t l = 0; l < m.label_error.size(); ++l) {
    const std::string name = l < label_names.size() ? label_names[l] : std::to_string(l);
    Add("label split=" + m.split + " index=" + std::to_string(l) + " name=" +
        Json(name).dump() + " error=" + Fmt(m.label_error[l]));
  }
}

std::string Report::Render(bool with_timings) const {
  std::string out;
  for (const auto& r : records) out += r + "\n";
  if (!with_timings) return out;
  for (const auto& t : timings) out += t + "\n";
  return out;
}

std::string Provenance() {
  return std::string("provenance tool=mlprior version=") + MLPRIOR_VERSION +
         " revision=" + MLPRIOR_GIT_REVISION;
}

TrainOutcome RunTrain(const ExperimentSpec& spec, const RunOptions& options) {
  const auto root = options.data_root ? options.data_root : DataRoot();
  return RunTrain(spec, LoadDataset(spec.dataset, root), options);
}

TrainOutcome RunTrain(const ExperimentSpec& spec, const MultiLabelDataset& input,
                      const RunOptions& options) {
  spec.Validate();
  input.Validate();
  const std::uint64_t seed = options.seed.value_or(spec.seed);
  const int v = input.num_labels();
  spec.train.Validate(v);
  if (input.Count(Split::kTrain) == 0) throw InvalidArgument("dataset has no train portion");

  TrainOutcome out;
  Report& rep = out.report;
  rep.Add(Provenance());
  rep.Add("config " + spec.ToJson());
  rep.Add("run seed=" + std::to_string(seed));

  MultiLabelDataset data = input;
  std::optional<MaxAbsScaler> scaler;
  if (spec.scale_features) {
    const Split fit_on[] = {Split::kTrain, Split::kValid};
    scaler = MaxAbsScaler::Fit(data, fit_on);
    scaler->ApplyInPlace(&data);
  }
  data = SplitValidation(data, spec.validation_fraction, seed);
  rep.Add("split train=" + std::to_string(data.Count(Split::kTrain)) +
          " valid=" + std::to_string(data.Count(Split::kValid)) +
          " test=" + std::to_string(data.Count(Split::kTest)));

  const ExampleSubset train = Select(data, Split::kTrain);
  const ExampleSubset valid = Select(data, Split::kValid);
  const std::vector<Labeling> valid_truth = valid.y;

  for (double lw : spec.grid.lambda_W) {
    for (double la : spec.grid.lambda_A) {
      for (double s0 : spec.grid.step0) out.cells.push_back({lw, la, s0, {}});
    }
  }
  const int n_cells = static_cast<int>(out.cells.size());
  const int inner_threads = std::max(1, options.threads / n_cells);
  auto config_for = [&](const GridCell& c) {
    TrainConfig cfg = spec.train;
    cfg.lambda_W = c.lambda_W;
    cfg.lambda_A = c.lambda_A;
    cfg.step0 = c.step0;
    cfg.seed = seed;
    cfg.threads = inner_threads;
    return cfg;
  };

  const auto t_grid = Clock::now();
  std::vector<std::vector<double>> cell_objective(n_cells);
  std::vector<double> cell_seconds(n_cells);
  internal::ParallelFor(n_cells, options.threads >= n_cells ? n_cells : options.threads,
                        [&](int c) {
    const auto t0 = Clock::now();
    const TrainConfig cfg = config_for(out.cells[c]);
    const TrainResult tr = Train(train.View(), cfg);
    cell_objective[c] = tr.epoch_objective;
    const std::vector<Labeling> pred =
        PredictAll(valid.x, tr.params, cfg.ResolvedDecoder(v), cfg.threads,
                   DeriveSeed(seed, 2));
    out.cells[c].valid = ComputeMetrics("valid", pred, valid_truth);
    cell_seconds[c] = Seconds(t0);
  });
  rep.AddTiming("grid", Seconds(t_grid));

  for (int c = 0; c < n_cells; ++c) {
    const GridCell& cell = out.cells[c];
    rep.Add("selection cell=" + std::to_string(c) + " lambda_W=" + Fmt(cell.lambda_W) +
            " lambda_A=" + Fmt(cell.lambda_A) + " step0=" + Fmt(cell.step0) +
            " valid_f1_loss=" + Fmt(cell.valid.f1_loss) +
            " valid_hamming_loss=" + Fmt(cell.valid.hamming_loss) +
            " final_train_objective=" +
            Fmt(cell_objective[c].empty() ? 0.0 : cell_objective[c].back()));
    rep.AddTiming("cell" + std::to_string(c), cell_seconds[c]);
  }

  if (spec.regime == SelectionRegime::kSingle) {
    int best = 0;
    for (int c = 1; c < n_cells; ++c) {
      if (SelectionValue(spec.selection, out.cells[c].valid) <
          SelectionValue(spec.selection, out.cells[best].valid)) {
        best = c;
      }
    }
    out.selected = {best};
    rep.Add("selected cell=" + std::to_string(best) + " by=" + spec.selection.ToString());
  } else {
    out.selected.assign(v, 0);
    for (int l = 0; l < v; ++l) {
      for (int c = 1; c < n_cells; ++c) {
        if (out.cells[c].valid.label_error[l] <
            out.cells[out.selected[l]].valid.label_error[l]) {
          out.selected[l] = c;
        }
      }
      rep.Add("selected label=" + std::to_string(l) + " name=" +
              Json(data.label_names[l]).dump() + " cell=" + std::to_string(out.selected[l]) +
              " by=hamming");
    }
  }

  // Retrain the selected cell(s) on train + valid.
  const Split final_splits[] = {Split::kTrain, Split::kValid};
  const ExampleSubset full = Select(data, final_splits);
  const std::set<int> needed(out.selected.begin(), out.selected.end());
  std::map<int, TrainResult> finals;
  const auto t_final = Clock::now();
  {
    std::vector<int> ids(needed.begin(), needed.end());
    std::vector<TrainResult> results(ids.size());
    internal::ParallelFor(static_cast<int>(ids.size()),
                          std::min<int>(options.threads, static_cast<int>(ids.size())),
                          [&](int j) {
      TrainConfig cfg = config_for(out.cells[ids[j]]);
      cfg.threads = std::max(1, options.threads / static_cast<int>(ids.size()));
      results[j] = Train(full.View(), cfg);
    });
    for (std::size_t j = 0; j < ids.size(); ++j) finals[ids[j]] = std::move(results[j]);
  }
  rep.AddTiming("final", Seconds(t_final));

  ModelParams params;
  if (spec.regime == SelectionRegime::kSingle) {
    params = finals.at(out.selected[0]).params;
    const auto& obj = finals.at(out.selected[0]).epoch_objective;
    for (std::size_t e = 0; e < obj.size(); ++e) {
      rep.Add("objective epoch=" + std::to_string(e) + " value=" + Fmt(obj[e]));
    }
  } else {
    params = ModelParams::Zero(data.dim, v, spec.train.sign);
    for (int l = 0; l < v; ++l) {
      const ModelParams& src = finals.at(out.selected[l]).params;
      params.W.col(l) = src.W.col(l);
      params.b[l] = src.b[l];
    }
  }

  const GridCell& chosen = out.cells[out.selected[0]];
  TrainConfig final_cfg = config_for(chosen);
  const ExampleSubset test = Select(data, Split::kTest);
  const auto t_test = Clock::now();
  const std::vector<Labeling> test_pred =
      PredictAll(test.x, params, final_cfg.ResolvedDecoder(v), options.threads,
                 DeriveSeed(seed, 3));
  out.test = ComputeMetrics("test", test_pred, test.y);
  rep.AddTiming("test", Seconds(t_test));
  rep.AddMetrics(out.test, data.label_names);

  ModelFile& m = out.model;
  m.params = std::move(params);
  m.label_names = data.label_names;
  if (scaler) m.scaler = scaler->factor;
  Json cfg = Json::parse(spec.ToJson());
  cfg["seed"] = seed;
  cfg["train"]["lambda_W"] = chosen.lambda_W;
  cfg["train"]["lambda_A"] = chosen.lambda_A;
  cfg["train"]["step0"] = chosen.step0;
  cfg["selected_cells"] = out.selected;
  m.config_json = cfg.dump();
  m.metrics_json = Json{{"test", MetricsJson(out.test)},
                        {"valid", MetricsJson(out.cells[out.selected[0]].valid)}}
                       .dump();
  return out;
}

DecoderOptions DecoderFromModel(const ModelFile& model) {
  Json j;
  try {
    j = Json::parse(model.config_json);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("model config is not JSON: ") + e.what());
  }
  TrainConfig cfg;
  if (j.contains("train")) {
    Json t = j.at("train");
    cfg = TrainFromJson(t, "model.train");
  }
  cfg.sign = model.params.sign;
  return cfg.ResolvedDecoder(model.params.num_labels());
}

std::vector<Labeling> RunPredict(const ModelFile& model,
                                 const MultiLabelDataset& data, Split split,
                                 const RunOptions& options,
                                 std::optional<DecoderKind> decoder) {
  if (data.dim != model.params.dim()) {
    throw DimensionError("dataset has " + std::to_string(data.dim) +
                         " features, model expects " + std::to_string(model.params.dim()));
  }
  if (data.num_labels() != model.params.num_labels()) {
    throw DimensionError("dataset has " + std::to_string(data.num_labels()) +
                         " labels, model expects " +
                         std::to_string(model.params.num_labels()));
  }
  DecoderOptions opts = DecoderFromModel(model);
  if (decoder) {
    if (!DecoderSupports(*decoder, model.params.sign)) {
      throw InvalidArgument("decoder 'mincut' needs a model with a non-positive prior");
    }
    opts.kind = ResolveDecoder(*decoder, model.params.num_labels(), model.params.sign,
                               opts.auto_exhaustive_labels);
  }
  std::vector<FeatureVector> x;
  for (int i : data.Indices(split)) {
    x.push_back(model.scaler ? MaxAbsScaler{*model.scaler}.Apply(data.instances[i])
                             : data.instances[i]);
  }
  return PredictAll(x, model.params, opts, options.threads,
                    DeriveSeed(options.seed.value_or(0), 4));
}

std::string FormatPredictions(const std::vector<Labeling>& predictions,
                              const std::vector<std::string>& label_names) {
  std::string out;
  for (const Labeling& y : predictions) {
    bool first = true;
    for (int l = 0; l < y.size(); ++l) {
      if (y[l] != 1) continue;
      if (!first) out += ' ';
      out += l < static_cast<int>(label_names.size()) ? label_names[l] : std::to_string(l);
      first = false;
    }
    out += '\n';
  }
  return out;
}

Report RunEval(const ModelFile& model, const MultiLabelDataset& data, Split split,
               const RunOptions& options, std::optional<DecoderKind> decoder) {
  Report rep;
  rep.Add(Provenance());
  rep.Add("model_config " + model.config_json);
  const auto t0 = Clock::now();
  const std::vector<Labeling> pred = RunPredict(model, data, split, options, decoder);
  rep.AddTiming("decode", Seconds(t0));
  const std::vector<Labeling> truth = TruthFor(data, split);
  const SplitMetrics m = ComputeMetrics(std::string(ToString(split)), pred, truth);
  rep.AddMetrics(m, data.label_names);
  const std::vector<int> idx = data.Indices(split);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    rep.Add("instance index=" + std::to_string(idx[i]) +
            " f1_loss=" + Fmt(Loss(LossKind::F1(), pred[i], truth[i])) +
            " hamming_loss=" + Fmt(HammingLoss(pred[i], truth[i])) +
            " predicted=" + std::to_string(pred[i].Code()));
  }
  return rep;
}

QboProblem RandomBenchProblem(const BenchSpec& spec, int trial) {
  const int n = spec.num_labels;
  std::mt19937_64 rng(DeriveSeed(spec.seed, 0x62656e6368ULL, trial));
  std::normal_distribution<double> normal;
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b[i] = normal(rng);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  if (spec.prior != SignConstraint::kZero) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double a = 0.5 * normal(rng);
        if (spec.prior == SignConstraint::kNonPositive) a = -std::abs(a);
        if (spec.prior == SignConstraint::kNonNegative) a = std::abs(a);
        A(i, j) = A(j, i) = a;
      }
    }
  }
  std::optional<AffineConstraint> c;
  if (spec.cardinality) c = CardinalityConstraint(n, n / 2);
  return QboProblem(std::move(A), std::move(b), std::move(c));
}

BenchOutcome BenchDecode(const BenchSpec& spec) {
  if (spec.num_labels < 1) throw InvalidArgument("bench needs at least one label");
  if (spec.trials < 0) throw InvalidArgument("trials must be >= 0");
  const bool has_exhaustive =
      std::find(spec.decoders.begin(), spec.decoders.end(), DecoderKind::kExhaustive) !=
      spec.decoders.end();
  if (has_exhaustive && spec.num_labels > 20) {
    throw InvalidArgument("exhaustive benchmarking is limited to V <= 20");
  }
  for (DecoderKind d : spec.decoders) {
    if (!DecoderSupports(d, spec.prior)) {
      throw InvalidArgument("decoder 'mincut' needs prior nonpos or zero");
    }
  }
  const bool reference = spec.num_labels <= 20;
  const int nd = static_cast<int>(spec.decoders.size());
  std::vector<BenchRow> rows(static_cast<std::size_t>(spec.trials) * nd);
  internal::ParallelFor(spec.trials, spec.threads, [&](int t) {
    const QboProblem p = RandomBenchProblem(spec, t);
    const double exact = reference ? ExhaustiveDecode(p).rounded_value
                                   : std::numeric_limits<double>::quiet_NaN();
    for (int d = 0; d < nd; ++d) {
      DecoderOptions opts;
      opts.kind = spec.decoders[d];
      const auto t0 = Clock::now();
      const DecodeSolution s = Decode(p, opts, DeriveSeed(spec.seed, t, d));
      BenchRow& r = rows[static_cast<std::size_t>(t) * nd + d];
      r.seconds = Seconds(t0);
      r.decoder = spec.decoders[d];
      r.trial = t;
      r.exact = exact;
      r.relaxation = s.relaxation_value;
      r.rounded = s.rounded_value;
      r.feasible = p.IsFeasible(s.rounded);
    }
  });

  BenchOutcome out;
  out.report.Add(Provenance());
  out.report.Add("bench labels=" + std::to_string(spec.num_labels) +
                 " trials=" + std::to_string(spec.trials) +
                 " prior=" + std::string(ToString(spec.prior)) +
                 " cardinality=" + (spec.cardinality ? "1" : "0") +
                 " seed=" + std::to_string(spec.seed));
  for (const BenchRow& r : rows) {
    out.report.Add("row decoder=" + std::string(ToString(r.decoder)) +
                   " trial=" + std::to_string(r.trial) + " exact=" + Fmt(r.exact) +
                   " relaxation=" + Fmt(r.relaxation) + " rounded=" + Fmt(r.rounded) +
                   " relaxation_ratio=" + Fmt(r.relaxation / r.exact) +
                   " rounded_ratio=" + Fmt(r.rounded / r.exact) +
                   " feasible=" + (r.feasible ? "1" : "0"));
  }
  for (int d = 0; d < nd; ++d) {
    double relax = 0.0, round = 0.0, feasible = 0.0, secs = 0.0;
    for (int t = 0; t < spec.trials; ++t) {
      const BenchRow& r = rows[static_cast<std::size_t>(t) * nd + d];
      relax += r.relaxation / r.exact;
      round += r.rounded / r.exact;
      feasible += r.feasible;
      secs += r.seconds;
    }
    if (spec.trials == 0) continue;
    const double n = spec.trials;
    const std::string name(ToString(spec.decoders[d]));
    out.report.Add("summary decoder=" + name + " trials=" + std::to_string(spec.trials) +
                   " mean_relaxation_ratio=" + Fmt(relax / n) +
                   " mean_rounded_ratio=" + Fmt(round / n) +
                   " feasibility_rate=" + Fmt(feasible / n));
    out.report.AddTiming("decode_" + name, secs);
  }
  out.rows = std::move(rows);
  return out;
}

}  // namespace mlprior
