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

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "mlprior/dataset.h"
#include "mlprior/errors.h"

namespace mlprior {
namespace {

template <typename T>
bool ParseWhole(std::string_view s, T* out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

MultiLabelDataset ParseSvmlightMultilabel(const std::string& text,
                                          int num_labels,
                                          const SvmlightOptions& options,
                                          const std::string& source) {
  if (num_labels <= 0) throw InvalidArgument("label count must be positive");
  if (options.dim < 0) throw InvalidArgument("dimension must be >= 0");
  struct Row {
    std::vector<FeatureEntry> entries;
    std::vector<std::int8_t> bits;
    long line;
  };
  std::vector<Row> rows;
  int max_index = -1;
  const int offset = options.one_based ? 1 : 0;

  std::istringstream in(text);
  std::string raw;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    const bool leading_space =
        !line.empty() && std::isspace(static_cast<unsigned char>(line.front()));
    if (tokens.empty()) continue;

    Row row;
    row.line = line_no;
    row.bits.assign(num_labels, -1);
    std::size_t t = 0;
    // The label field is absent when the line starts with whitespace or its
    // first token is already a feature pair.
    if (!leading_space && tokens[0].find(':') == std::string_view::npos) {
      std::string_view field = tokens[0];
      while (!field.empty()) {
        const std::size_t comma = field.find(',');
        const std::string_view id = field.substr(0, comma);
        int label = -1;
        if (!ParseWhole(id, &label) || label < 0) {
          throw ParseError(source, line_no, "bad label id '" + std::string(id) + "'");
        }
        if (label >= num_labels) {
          throw ParseError(source, line_no,
                           "label id " + std::to_string(label) + " >= " +
                               std::to_string(num_labels));
        }
        row.bits[label] = 1;
        if (comma == std::string_view::npos) break;
        field.remove_prefix(comma + 1);
        if (field.empty()) throw ParseError(source, line_no, "trailing comma in labels");
      }
      t = 1;
    }
    for (; t < tokens.size(); ++t) {
      const std::size_t colon = tokens[t].find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(source, line_no, "malformed pair '" + std::string(tokens[t]) + "'");
      }
      int index = 0;
      double value = 0.0;
      if (!ParseWhole(tokens[t].substr(0, colon), &index) ||
          !ParseWhole(tokens[t].substr(colon + 1), &value) || !std::isfinite(value)) {
        throw ParseError(source, line_no, "malformed pair '" + std::string(tokens[t]) + "'");
      }
      index -= offset;
      if (index < 0) {
        throw ParseError(source, line_no, "feature index below the base");
      }
      max_index = std::max(max_index, index);
      row.entries.push_back({index, value});
    }
    rows.push_back(std::move(row));
  }

  MultiLabelDataset ds;
  ds.dim = options.dim > 0 ? options.dim : max_index + 1;
  if (max_index >= ds.dim) {
    throw InvalidArgument("feature index " + std::to_string(max_index + offset) +
                          " exceeds the declared dimension " + std::to_string(ds.dim));
  }
  for (int l = 0; l < num_labels; ++l) ds.label_names.push_back(std::to_string(l));
  for (Row& row : rows) {
    try {
      ds.instances.emplace_back(ds.dim, std::move(row.entries));
    } catch (const InputError& e) {
      throw ParseError(source, row.line, e.what());
    }
    ds.labelings.emplace_back(std::move(row.bits));
    ds.split.push_back(options.tag);
  }
  return ds;
}

MultiLabelDataset LoadSvmlightMultilabel(const std::filesystem::path& path,
                                         int num_labels,
                                         const SvmlightOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseSvmlightMultilabel(ss.str(), num_labels, options, path.string());
}

}  // namespace mlprior
