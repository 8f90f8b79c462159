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

#ifndef MLPRIOR_DATASET_H_
#define MLPRIOR_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mlprior/labeling.h"
#include "mlprior/trainer.h"

namespace mlprior {

enum class Split : std::uint8_t { kTrain, kValid, kTest };

std::string_view ToString(Split s);
Split ParseSplit(std::string_view text);

class MultiLabelDataset {
 public:
  std::vector<FeatureVector> instances;
  std::vector<Labeling> labelings;
  std::vector<std::string> label_names;
  std::vector<Split> split;
  int dim = 0;

  int size() const { return static_cast<int>(instances.size()); }
  int num_labels() const { return static_cast<int>(label_names.size()); }

  // Throws InputError when sizes, dimensions or tags disagree.
  void Validate() const;

  std::vector<int> Indices(Split s) const;
  int Count(Split s) const;
};

// Owning copy of some instances, viewable as an ExampleSet.
struct ExampleSubset {
  std::vector<FeatureVector> x;
  std::vector<Labeling> y;
  int dim = 0;
  int num_labels = 0;

  ExampleSet View() const { return {x, y, dim, num_labels}; }
};

ExampleSubset Select(const MultiLabelDataset& ds, std::span<const Split> splits);
ExampleSubset Select(const MultiLabelDataset& ds, Split s);

// Re-tags round(fraction * #train) train instances as valid, chosen
// uniformly with a seeded shuffle. Test instances keep their tag.
MultiLabelDataset SplitValidation(const MultiLabelDataset& ds, double fraction,
                                  std::uint64_t seed);

// Per-feature multipliers 1 / max |x_j| over the chosen splits (1 for
// features that never appear).
struct MaxAbsScaler {
  Eigen::VectorXd factor;

  static MaxAbsScaler Fit(const MultiLabelDataset& ds,
                          std::span<const Split> splits);
  FeatureVector Apply(const FeatureVector& x) const;
  void ApplyInPlace(MultiLabelDataset* ds) const;
};

// Mulan ARFF plus XML label list. Every instance is tagged `tag`.
MultiLabelDataset LoadMulan(const std::filesystem::path& arff,
                            const std::filesystem::path& xml,
                            Split tag = Split::kTrain);

// Train and test ARFF files sharing one XML label list.
MultiLabelDataset LoadMulanTrainTest(const std::filesystem::path& train_arff,
                                     const std::filesystem::path& test_arff,
                                     const std::filesystem::path& xml);

struct MulanFiles {
  std::filesystem::path train_arff;
  std::filesystem::path test_arff;
  std::filesystem::path xml;
};

// Looks for <root>/<name>/<name>-{train,test}.arff and <name>.xml, then the
// same names directly under <root>.
std::optional<MulanFiles> FindMulanDataset(const std::filesystem::path& root,
                                           const std::string& name);

inline constexpr const char* kDataRootVariable = "MLPRIOR_DATA_DIR";

// Value of $MLPRIOR_DATA_DIR, if set and non-empty.
std::optional<std::filesystem::path> DataRoot();

struct SvmlightOptions {
  bool one_based = true;
  // 0 infers the dimension from the largest index.
  int dim = 0;
  Split tag = Split::kTrain;
};

// Lines "l1,l2,... idx:val idx:val ...", '#' starts a comment.
MultiLabelDataset LoadSvmlightMultilabel(const std::filesystem::path& path,
                                         int num_labels,
                                         const SvmlightOptions& options = {});
MultiLabelDataset ParseSvmlightMultilabel(const std::string& text,
                                          int num_labels,
                                          const SvmlightOptions& options = {},
                                          const std::string& source = "<memory>");

namespace internal {
MultiLabelDataset ParseMulan(const std::string& arff_text,
                             const std::string& xml_text, Split tag,
                             const std::string& source = "<memory>");
std::vector<std::string> ParseMulanLabelNames(const std::string& xml_text);
}  // namespace internal

}  // namespace mlprior

#endif  // MLPRIOR_DATASET_H_
