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

#ifndef MLPRIOR_MODEL_IO_H_
#define MLPRIOR_MODEL_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mlprior/model.h"

namespace mlprior {

inline constexpr int kModelFormatVersion = 1;

struct ModelFile {
  ModelParams params;
  std::vector<std::string> label_names;
  // Feature multipliers applied before scoring, if any.
  std::optional<Eigen::VectorXd> scaler;
  // Free-form JSON objects (training config echo, metrics snapshot).
  std::string config_json = "{}";
  std::string metrics_json = "{}";

  friend bool operator==(const ModelFile& a, const ModelFile& b);
};

std::string SerializeModel(const ModelFile& model);
ModelFile DeserializeModel(const std::string& text,
                           const std::string& source = "<memory>");

void SaveModel(const ModelFile& model, const std::filesystem::path& path);
ModelFile LoadModel(const std::filesystem::path& path);

// Models with more labels store W and A as sparse triplets.
inline constexpr int kDenseModelMaxLabels = 512;

}  // namespace mlprior

#endif  // MLPRIOR_MODEL_IO_H_
