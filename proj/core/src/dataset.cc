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

#include "mlprior/dataset.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "mlprior/errors.h"
#include "mlprior/random.h"

namespace mlprior {

std::string_view ToString(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kValid: return "valid";
    case Split::kTest: return "test";
  }
  return "unknown";
}

Split ParseSplit(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "valid") return Split::kValid;
  if (text == "test") return Split::kTest;
  throw InvalidArgument("unknown split '" + std::string(text) +
                        "' (expected train, valid or test)");
}

void MultiLabelDataset::Validate() const {
  const std::size_t n = instances.size();
  if (labelings.size() != n || split.size() != n) {
    throw DimensionError("dataset columns differ in length");
  }
  const int v = num_labels();
  for (std::size_t i = 0; i < n; ++i) {
    if (labelings[i].size() != v) {
      throw DimensionError("instance " + std::to_string(i) + " has " +
                           std::to_string(labelings[i].size()) +
                           " labels, expected " + std::to_string(v));
    }
    if (instances[i].dim() != dim) {
      throw DimensionError("instance " + std::to_string(i) +
                           " has the wrong feature dimension");
    }
  }
}

std::vector<int> MultiLabelDataset::Indices(Split s) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (split[i] == s) out.push_back(i);
  }
  return out;
}

int MultiLabelDataset::Count(Split s) const {
  return static_cast<int>(std::count(split.begin(), split.end(), s));
}

ExampleSubset Select(const MultiLabelDataset& ds, std::span<const Split> splits) {
  ExampleSubset out;
  out.dim = ds.dim;
  out.num_labels = ds.num_labels();
  for (int i = 0; i < ds.size(); ++i) {
    if (std::find(splits.begin(), splits.end(), ds.split[i]) == splits.end()) continue;
    out.x.push_back(ds.instances[i]);
    out.y.push_back(ds.labelings[i]);
  }
  return out;
}

ExampleSubset Select(const MultiLabelDataset& ds, Split s) {
  return Select(ds, std::span<const Split>(&s, 1));
}

MultiLabelDataset SplitValidation(const MultiLabelDataset& ds, double fraction,
                                  std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw InvalidArgument("validation fraction must lie in (0, 1)");
  }
  std::vector<int> train = ds.Indices(Split::kTrain);
  if (train.empty()) throw InvalidArgument("dataset has no train portion");
  MultiLabelDataset out = ds;
  const auto count = static_cast<std::size_t>(std::llround(fraction * train.size()));
  std::mt19937_64 rng(DeriveSeed(seed, 0x76616c6964ULL));
  Shuffle(train, rng);
  for (std::size_t j = 0; j < count; ++j) out.split[train[j]] = Split::kValid;
  return out;
}

MaxAbsScaler MaxAbsScaler::Fit(const MultiLabelDataset& ds,
                               std::span<const Split> splits) {
  Eigen::VectorXd peak = Eigen::VectorXd::Zero(ds.dim);
  for (int i = 0; i < ds.size(); ++i) {
    if (std::find(splits.begin(), splits.end(), ds.split[i]) == splits.end()) continue;
    for (const FeatureEntry& e : ds.instances[i].entries()) {
      peak[e.index] = std::max(peak[e.index], std::abs(e.value));
    }
  }
  MaxAbsScaler s;
  s.factor = peak.unaryExpr([](double m) { return m > 0.0 ? 1.0 / m : 1.0; });
  return s;
}

FeatureVector MaxAbsScaler::Apply(const FeatureVector& x) const {
  if (x.dim() != factor.size()) {
    throw DimensionError("scaler dimension does not match the features");
  }
  std::vector<FeatureEntry> entries(x.entries().begin(), x.entries().end());
  for (FeatureEntry& e : entries) e.value *= factor[e.index];
  return FeatureVector(x.dim(), std::move(entries));
}

void MaxAbsScaler::ApplyInPlace(MultiLabelDataset* ds) const {
  for (FeatureVector& x : ds->instances) x = Apply(x);
}

std::optional<MulanFiles> FindMulanDataset(const std::filesystem::path& root,
                                           const std::string& name) {
  for (const auto& dir : {root / name, root}) {
    MulanFiles f{dir / (name + "-train.arff"), dir / (name + "-test.arff"),
                 dir / (name + ".xml")};
    if (std::filesystem::is_regular_file(f.train_arff) &&
        std::filesystem::is_regular_file(f.test_arff) &&
        std::filesystem::is_regular_file(f.xml)) {
      return f;
    }
  }
  return std::nullopt;
}

std::optional<std::filesystem::path> DataRoot() {
  const char* value = std::getenv(kDataRootVariable);
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::filesystem::path(value);
}

}  // namespace mlprior
