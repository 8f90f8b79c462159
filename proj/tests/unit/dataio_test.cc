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


#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "mlprior/dataset.h"
#include "mlprior/errors.h"
#include "mlprior/model_io.h"
#include "oracles.h"

namespace mlprior {
namespace {

namespace fs = std::filesystem;

constexpr const char* kXml = R"(<?xml version="1.0" encoding="utf-8"?>
<labels xmlns="http://mulan.sourceforge.net/labels">
<label name="Class-1"></label>
<label name="a&amp;b"></label>
</labels>
)";

constexpr const char* kDenseArff = R"(% comment
@relation 'toy: -C -2'
@attribute f1 numeric
@attribute 'f 2' real
@attribute Class-1 {0,1}
@attribute a&b {0,1}

@data
0.5,-1,1,0
2,0,0,0
% interleaved comment
0,3.25,1,1
)";

constexpr const char* kSparseArff = R"(@RELATION sparse
@ATTRIBUTE f1 NUMERIC
@ATTRIBUTE Class-1 {0,1}
@ATTRIBUTE f2 NUMERIC
@ATTRIBUTE a&b {0,1}
@DATA
{0 1.5,1 1}
{2 -2,3 1}
{}
)";

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mlprior_dataio_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void WriteFile(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

TEST(MulanTest, DenseRows) {
  const MultiLabelDataset ds = internal::ParseMulan(kDenseArff, kXml, Split::kTest);
  ASSERT_EQ(ds.size(), 3);
  EXPECT_EQ(ds.dim, 2);
  EXPECT_EQ(ds.label_names, (std::vector<std::string>{"Class-1", "a&b"}));
  EXPECT_EQ(ds.instances[0].ToDense(), Eigen::Vector2d(0.5, -1.0));
  EXPECT_EQ(ds.labelings[0], Labeling::FromCode(0b01, 2));
  EXPECT_EQ(ds.labelings[1], Labeling::FromCode(0b00, 2));
  EXPECT_EQ(ds.labelings[2], Labeling::FromCode(0b11, 2));
  EXPECT_EQ(ds.Count(Split::kTest), 3);
}

TEST(MulanTest, SparseRowsWithInterleavedLabels) {
  const MultiLabelDataset ds = internal::ParseMulan(kSparseArff, kXml, Split::kTrain);
  ASSERT_EQ(ds.size(), 3);
  EXPECT_EQ(ds.dim, 2);
  EXPECT_EQ(ds.instances[0].ToDense(), Eigen::Vector2d(1.5, 0.0));
  EXPECT_EQ(ds.instances[1].ToDense(), Eigen::Vector2d(0.0, -2.0));
  EXPECT_EQ(ds.labelings[0], Labeling::FromCode(0b01, 2));
  EXPECT_EQ(ds.labelings[1], Labeling::FromCode(0b10, 2));
  EXPECT_EQ(ds.labelings[2], Labeling::AllNegative(2));
}

TEST(MulanTest, MalformedInputReportsLine) {
  const std::string missing = std::string(kDenseArff) + "?,1,0,0\n";
  try {
    internal::ParseMulan(missing, kXml, Split::kTrain, "toy.arff");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 13);
    EXPECT_NE(std::string(e.what()).find("toy.arff:13"), std::string::npos);
  }
  EXPECT_THROW(internal::ParseMulan(std::string(kDenseArff) + "1,1,2,0\n", kXml, Split::kTrain),
               ParseError);
  EXPECT_THROW(internal::ParseMulan(std::string(kDenseArff) + "1,1,0\n", kXml, Split::kTrain),
               ParseError);
  const std::string bad_xml = "<labels><label name=\"nope\"></label></labels>";
  EXPECT_THROW(internal::ParseMulan(kDenseArff, bad_xml, Split::kTrain), InputError);
}

TEST(MulanTest, FilesOnDiskAndDiscovery) {
  const fs::path root = TempDir("mulan");
  fs::create_directories(root / "toy");
  WriteFile(root / "toy" / "toy-train.arff", kDenseArff);
  WriteFile(root / "toy" / "toy-test.arff", kSparseArff);
  WriteFile(root / "toy" / "toy.xml", kXml);
  const auto files = FindMulanDataset(root, "toy");
  ASSERT_TRUE(files.has_value());
  const MultiLabelDataset ds = LoadMulanTrainTest(files->train_arff, files->test_arff, files->xml);
  EXPECT_EQ(ds.Count(Split::kTrain), 3);
  EXPECT_EQ(ds.Count(Split::kTest), 3);
  EXPECT_FALSE(FindMulanDataset(root, "absent").has_value());
  EXPECT_THROW(LoadMulan(root / "nope.arff", files->xml), InputError);
  fs::remove_all(root);
}

TEST(SvmlightTest, ParsesLabelsAndFeatures) {
  const std::string text =
      "0,2 1:0.5 3:-1\n"
      "# comment line\n"
      " 2:4\n"
      "1 1:1 # trailing comment\n";
  const MultiLabelDataset ds = ParseSvmlightMultilabel(text, 3);
  ASSERT_EQ(ds.size(), 3);
  EXPECT_EQ(ds.dim, 3);
  EXPECT_EQ(ds.labelings[0], Labeling::FromCode(0b101, 3));
  EXPECT_EQ(ds.labelings[1], Labeling::AllNegative(3));
  EXPECT_EQ(ds.labelings[2], Labeling::FromCode(0b010, 3));
  EXPECT_EQ(ds.instances[0].ToDense(), Eigen::Vector3d(0.5, 0.0, -1.0));

  SvmlightOptions zero;
  zero.one_based = false;
  zero.dim = 5;
  const MultiLabelDataset z = ParseSvmlightMultilabel("0 0:1 4:2\n", 1, zero);
  EXPECT_EQ(z.dim, 5);
  EXPECT_EQ(z.instances[0].ToDense()[4], 2.0);
}

TEST(SvmlightTest, RejectsBadLines) {
  EXPECT_THROW(ParseSvmlightMultilabel("5 1:1\n", 3), ParseError);
  EXPECT_THROW(ParseSvmlightMultilabel("0 1:1 1:2\n", 3), InputError);
  EXPECT_THROW(ParseSvmlightMultilabel("0 x:1\n", 3), ParseError);
  EXPECT_THROW(ParseSvmlightMultilabel("0 0:1\n", 3), InputError);
}

MultiLabelDataset Toy(int n) {
  MultiLabelDataset ds;
  ds.dim = 2;
  ds.label_names = {"a", "b"};
  for (int i = 0; i < n; ++i) {
    ds.instances.push_back(FeatureVector::FromDense(Eigen::Vector2d(i, -2.0 * i)));
    ds.labelings.push_back(Labeling::FromCode(i % 4, 2));
    ds.split.push_back(i < n - 3 ? Split::kTrain : Split::kTest);
  }
  return ds;
}

TEST(SplitTest, ValidationSplitIsSeededAndSized) {
  const MultiLabelDataset ds = Toy(23);
  const MultiLabelDataset a = SplitValidation(ds, 0.25, 5);
  EXPECT_EQ(a.Count(Split::kValid), 5);  // round(0.25 * 20)
  EXPECT_EQ(a.Count(Split::kTrain), 15);
  EXPECT_EQ(a.Count(Split::kTest), 3);
  EXPECT_EQ(a.split, SplitValidation(ds, 0.25, 5).split);
  EXPECT_NE(a.split, SplitValidation(ds, 0.25, 6).split);
  EXPECT_THROW(SplitValidation(ds, 1.0, 5), InvalidArgument);
}

TEST(ScalerTest, MaxAbsUsesChosenSplits) {
  MultiLabelDataset ds = Toy(6);
  const std::vector<Split> train{Split::kTrain};
  const MaxAbsScaler s = MaxAbsScaler::Fit(ds, train);
  EXPECT_DOUBLE_EQ(s.factor[0], 1.0 / 2.0);
  EXPECT_DOUBLE_EQ(s.factor[1], 1.0 / 4.0);
  s.ApplyInPlace(&ds);
  EXPECT_DOUBLE_EQ(ds.instances[2].ToDense()[1], -1.0);
  EXPECT_DOUBLE_EQ(ds.instances[5].ToDense()[0], 2.5);  // test rows may exceed 1
}

ModelFile RandomModel(std::mt19937_64& rng, int d, int v) {
  ModelFile m;
  m.params = ModelParams::Zero(d, v, SignConstraint::kNonPositive);
  for (int j = 0; j < v; ++j) m.params.W.col(j) = oracle::RandomVector(rng, d);
  m.params.b = oracle::RandomVector(rng, v);
  m.params.A = oracle::RandomPrior(rng, v, 1.0, true);
  for (int j = 0; j < v; ++j) m.label_names.push_back("label \"" + std::to_string(j) + "\"");
  m.scaler = oracle::RandomVector(rng, d).cwiseAbs();
  m.config_json = R"({"loss":"f1","lambda_W":0.001})";
  m.metrics_json = R"({"valid":{"f1_loss":0.25}})";
  return m;
}

TEST(ModelIoTest, RoundTripIsExact) {
  std::mt19937_64 rng(71);
  const ModelFile m = RandomModel(rng, 4, 5);
  const std::string text = SerializeModel(m);
  EXPECT_EQ(DeserializeModel(text), m);
  EXPECT_EQ(SerializeModel(DeserializeModel(text)), text);

  const fs::path dir = TempDir("model");
  SaveModel(m, dir / "model.txt");
  EXPECT_EQ(LoadModel(dir / "model.txt"), m);
  fs::remove_all(dir);
}

TEST(ModelIoTest, SparseLayoutForManyLabels) {
  std::mt19937_64 rng(72);
  ModelFile m = RandomModel(rng, 2, kDenseModelMaxLabels + 3);
  m.params.A.setZero();
  m.params.A(0, 1) = m.params.A(1, 0) = -0.5;
  const std::string text = SerializeModel(m);
  EXPECT_NE(text.find("sparse"), std::string::npos);
  EXPECT_EQ(DeserializeModel(text), m);
}

TEST(ModelIoTest, CorruptionAndVersionAreDetected) {
  std::mt19937_64 rng(73);
  const std::string text = SerializeModel(RandomModel(rng, 3, 3));
  std::string flipped = text;
  const std::size_t pos = flipped.find("\nb ");
  ASSERT_NE(pos, std::string::npos);
  flipped[pos + 4] = flipped[pos + 4] == '1' ? '2' : '1';
  EXPECT_THROW(DeserializeModel(flipped), FormatError);

  std::string future = text;
  future.replace(0, future.find('\n'), "mlprior-model 2");
  try {
    DeserializeModel(future);
    FAIL() << "expected a version error";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
  EXPECT_THROW(DeserializeModel("garbage"), FormatError);
  EXPECT_THROW(LoadModel("/nonexistent/model.txt"), InputError);
}

}  // namespace
}  // namespace mlprior
