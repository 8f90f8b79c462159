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


#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "mlprior/errors.h"
#include "mlprior/harness.h"
#include "oracles.h"

namespace mlprior {
namespace {

namespace fs = std::filesystem;

// Separable toy problem written as svmlight text; labels are signs of a
// hidden linear map with label 2 copying label 0.
std::string ToySvmlight(std::uint64_t seed, int n) {
  // Same hidden map for every file; only the instances depend on `seed`.
  std::mt19937_64 map_rng(99);
  Eigen::MatrixXd W(4, 3);
  for (int l = 0; l < 3; ++l) W.col(l) = oracle::RandomVector(map_rng, 4);
  std::mt19937_64 rng(seed);
  std::ostringstream out;
  out.precision(17);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd x = oracle::RandomVector(rng, 4);
    Eigen::VectorXd s = W.transpose() * x;
    s[2] = s[0];
    std::string labels;
    for (int l = 0; l < 3; ++l) {
      if (s[l] > 0) labels += (labels.empty() ? "" : ",") + std::to_string(l);
    }
    out << labels;
    for (int f = 0; f < 4; ++f) out << ' ' << f + 1 << ':' << x[f];
    out << '\n';
  }
  return out.str();
}

MultiLabelDataset ToyData() {
  MultiLabelDataset train = ParseSvmlightMultilabel(ToySvmlight(1, 80), 3);
  const MultiLabelDataset test =
      ParseSvmlightMultilabel(ToySvmlight(2, 30), 3, {true, 4, Split::kTest});
  for (int i = 0; i < test.size(); ++i) {
    train.instances.push_back(test.instances[i]);
    train.labelings.push_back(test.labelings[i]);
    train.split.push_back(Split::kTest);
  }
  return train;
}

constexpr const char* kSpec = R"({
  "name": "toy",
  "seed": 3,
  "dataset": {"format": "svmlight", "train": "unused", "labels": 3},
  "train": {"loss": "hamming", "decoder": "exhaustive", "epochs": 5},
  "grid": {"lambda_W": [0.001, 0.1], "step0": [1.0]},
  "selection": "f1",
  "validation_fraction": 0.25
})";

TEST(ExperimentSpecTest, ParsesAndEchoes) {
  const ExperimentSpec s = ExperimentSpec::Parse(kSpec);
  EXPECT_EQ(s.name, "toy");
  EXPECT_EQ(s.seed, 3u);
  EXPECT_EQ(s.grid.size(), 2u);
  EXPECT_EQ(s.train.decoder, DecoderKind::kExhaustive);
  EXPECT_EQ(s.dataset.format, DatasetRef::Format::kSvmlight);
  EXPECT_EQ(ExperimentSpec::Parse(s.ToJson()).ToJson(), s.ToJson());
}

TEST(ExperimentSpecTest, RejectsUnknownKeysAndBadValues) {
  std::string typo = kSpec;
  typo.replace(typo.find("\"epochs\""), 8, "\"epoch\"");
  EXPECT_THROW(ExperimentSpec::Parse(typo), InvalidArgument);
  std::string mincut = kSpec;
  mincut.replace(mincut.find("exhaustive"), 10, "mincut");
  EXPECT_THROW(ExperimentSpec::Parse(mincut), InvalidArgument);
  EXPECT_THROW(ExperimentSpec::Parse("{not json"), InvalidArgument);
  std::string multiple = kSpec;
  multiple.replace(multiple.find("\"selection\""), 11, "\"regime\": \"multiple\", \"selection\"");
  EXPECT_THROW(ExperimentSpec::Parse(multiple), InvalidArgument);
}

TEST(HarnessTest, TrainSelectsAndReportsDeterministically) {
  const ExperimentSpec spec = ExperimentSpec::Parse(kSpec);
  const MultiLabelDataset data = ToyData();
  RunOptions opts;
  const TrainOutcome a = RunTrain(spec, data, opts);
  opts.threads = 3;
  const TrainOutcome b = RunTrain(spec, data, opts);
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(a.report.records, b.report.records);
  EXPECT_EQ(a.cells.size(), 2u);
  ASSERT_EQ(a.selected.size(), 1u);
  EXPECT_EQ(a.test.count, 30);
  EXPECT_LT(a.test.hamming_loss, 0.25);

  opts.seed = 4;
  const TrainOutcome c = RunTrain(spec, data, opts);
  EXPECT_FALSE(c.model == a.model);
}

TEST(HarnessTest, PredictAndEvalAgree) {
  const ExperimentSpec spec = ExperimentSpec::Parse(kSpec);
  const MultiLabelDataset data = ToyData();
  const TrainOutcome t = RunTrain(spec, data, {});
  const auto pred = RunPredict(t.model, data, Split::kTest, {});
  ASSERT_EQ(pred.size(), 30u);
  std::vector<Labeling> truth;
  for (int i : data.Indices(Split::kTest)) truth.push_back(data.labelings[i]);
  const SplitMetrics m = ComputeMetrics("test", pred, truth);
  EXPECT_NEAR(m.f1_loss, t.test.f1_loss, 1e-12);
  const Report r = RunEval(t.model, data, Split::kTest, {});
  EXPECT_EQ(r.Render(false), RunEval(t.model, data, Split::kTest, {}).Render(false));
  const std::string lines = FormatPredictions(pred, t.model.label_names);
  EXPECT_EQ(std::count(lines.begin(), lines.end(), '\n'), 30);
}

TEST(MetricsTest, CountsByHand) {
  const std::vector<Labeling> truth{Labeling::FromCode(0b01, 2), Labeling::FromCode(0b11, 2)};
  const std::vector<Labeling> pred{Labeling::FromCode(0b01, 2), Labeling::FromCode(0b01, 2)};
  const SplitMetrics m = ComputeMetrics("x", pred, truth);
  EXPECT_EQ(m.count, 2);
  EXPECT_NEAR(m.hamming_loss, 0.25, 1e-15);
  EXPECT_NEAR(m.f1_loss, 0.5 * (0.0 + 1.0 / 3.0), 1e-15);
  EXPECT_EQ(m.label_error, (std::vector<double>{0.0, 0.5}));
}

TEST(BenchTest, ExhaustiveRowsAreTight) {
  BenchSpec spec;
  spec.num_labels = 6;
  spec.trials = 4;
  spec.decoders = {DecoderKind::kExhaustive, DecoderKind::kSdp, DecoderKind::kSpectral};
  const BenchOutcome out = BenchDecode(spec);
  ASSERT_EQ(out.rows.size(), 12u);
  for (const BenchRow& r : out.rows) {
    EXPECT_LE(r.rounded, r.exact + 1e-9);
    EXPECT_GE(r.relaxation, r.exact - 1e-6);
    if (r.decoder == DecoderKind::kExhaustive) {
      EXPECT_NEAR(r.rounded, r.exact, 1e-12);
    }
  }
  EXPECT_EQ(out.report.Render(false), BenchDecode(spec).report.Render(false));
}

TEST(BenchTest, ZeroTrials) {
  BenchSpec spec;
  spec.trials = 0;
  const BenchOutcome out = BenchDecode(spec);
  EXPECT_TRUE(out.rows.empty());
  EXPECT_FALSE(out.report.records.empty());
}

#ifdef MLPRIOR_CLI_PATH

int RunCli(const std::string& args) {
  const std::string cmd = std::string(MLPRIOR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "mlprior_cli_test";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "train.svm") << ToySvmlight(1, 60);
    std::ofstream(dir_ / "test.svm") << ToySvmlight(2, 20);
    std::string spec = kSpec;
    spec.replace(spec.find("\"unused\""), 8,
                 "\"train.svm\", \"test\": \"test.svm\", \"dim\": 4");
    std::ofstream(dir_ / "spec.json") << spec;
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string D(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, SeededRunsAreByteIdentical) {
  const std::string common = " --data-root " + D("") + " --seed 5 --threads 2";
  ASSERT_EQ(RunCli("train --spec " + D("spec.json") + " --out " + D("a") + common), 0);
  ASSERT_EQ(RunCli("train --spec " + D("spec.json") + " --out " + D("b") + common), 0);
  EXPECT_EQ(Slurp(D("a/model.txt")), Slurp(D("b/model.txt")));
  EXPECT_EQ(Slurp(D("a/report.txt")), Slurp(D("b/report.txt")));
  EXPECT_FALSE(Slurp(D("a/report.txt")).empty());

  for (const char* out : {"e1", "e2"}) {
    ASSERT_EQ(RunCli("eval --model " + D("a/model.txt") + " --spec " + D("spec.json") +
                  " --out " + D(out) + common),
              0);
  }
  EXPECT_EQ(Slurp(D("e1")), Slurp(D("e2")));
  ASSERT_EQ(RunCli("predict --model " + D("a/model.txt") + " --svmlight " + D("test.svm") +
                " --out " + D("p1") + common),
            0);
  const std::string pred = Slurp(D("p1"));
  EXPECT_EQ(std::count(pred.begin(), pred.end(), '\n'), 20);
}

TEST_F(CliTest, BenchIsByteIdentical) {
  for (const char* out : {"b1", "b2"}) {
    ASSERT_EQ(RunCli(std::string("bench-decode --labels 7 --trials 3 --decoders exhaustive,sdp,spectral"
                              " --seed 9 --out ") + D(out)),
              0);
  }
  EXPECT_EQ(Slurp(D("b1")), Slurp(D("b2")));
  EXPECT_EQ(RunCli("bench-decode --trials 0 --out " + D("b0")), 0);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(RunCli(""), 2);
  EXPECT_EQ(RunCli("frobnicate"), 2);
  EXPECT_EQ(RunCli("train --spec " + D("missing.json")), 2);
  EXPECT_EQ(RunCli("bench-decode --decoders nonsense"), 2);
  EXPECT_EQ(RunCli("bench-decode --threads 0"), 2);
  EXPECT_EQ(RunCli("eval --model " + D("spec.json") + " --spec " + D("spec.json")), 2);
  EXPECT_EQ(RunCli("--help"), 0);
}

#endif  // MLPRIOR_CLI_PATH

}  // namespace
}  // namespace mlprior
