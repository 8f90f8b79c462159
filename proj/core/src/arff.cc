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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "mlprior/dataset.h"
#include "mlprior/errors.h"

namespace mlprior {
namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool StartsWithNoCase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

struct Cursor {
  const std::string& source;
  long line;

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(source, line, what);
  }
};

// Reads a possibly quoted token from the front of `s`.
std::string TakeToken(std::string_view& s, const Cursor& cur) {
  s = Trim(s);
  if (s.empty()) cur.Fail("expected a name");
  std::string out;
  if (s.front() == '\'' || s.front() == '"') {
    const char quote = s.front();
    std::size_t i = 1;
    for (; i < s.size() && s[i] != quote; ++i) {
      if (s[i] == '\\' && i + 1 < s.size()) ++i;
      out.push_back(s[i]);
    }
    if (i >= s.size()) cur.Fail("unterminated quoted name");
    s.remove_prefix(i + 1);
    return out;
  }
  std::size_t i = 0;
  while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  out.assign(s.substr(0, i));
  s.remove_prefix(i);
  return out;
}

std::string Unquote(std::string_view s) {
  s = Trim(s);
  if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return std::string(s);
}

// Splits on commas outside quotes.
std::vector<std::string_view> SplitFields(std::string_view s) {
  std::vector<std::string_view> out;
  char quote = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (c == '\\') {
        ++i;
      } else if (c == quote) {
        quote = 0;
      }
    } else if (c == '\'' || c == '"') {
      quote = c;
    } else if (c == ',') {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

struct Attribute {
  std::string name;
  bool binary_nominal = false;
};

double ParseNumber(std::string_view text, const Cursor& cur) {
  std::string token = Unquote(text);
  std::string_view t = token;
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  if (t == "?") cur.Fail("missing values are not supported");
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    cur.Fail("malformed number '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) cur.Fail("non-finite value");
  return value;
}

double ParseValue(const Attribute& attr, std::string_view text, const Cursor& cur) {
  if (attr.binary_nominal) {
    const std::string v = Unquote(text);
    if (v == "0") return 0.0;
    if (v == "1") return 1.0;
    if (v == "?") cur.Fail("missing values are not supported");
    cur.Fail("attribute '" + attr.name + "' expects 0 or 1, got '" + v + "'");
  }
  return ParseNumber(text, cur);
}

std::string XmlUnescape(const std::string& s) {
  static const std::pair<const char*, char> kEntities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    bool replaced = false;
    if (s[i] == '&') {
      for (const auto& [entity, ch] : kEntities) {
        const std::size_t len = std::char_traits<char>::length(entity);
        if (s.compare(i, len, entity) == 0) {
          out.push_back(ch);
          i += len;
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(s[i++]);
  }
  return out;
}

}  // namespace

namespace internal {

std::vector<std::string> ParseMulanLabelNames(const std::string& xml_text) {
  static const std::regex kLabel(
      R"re(<label\s+name\s*=\s*(?:"([^"]*)"|'([^']*)'))re");
  std::vector<std::string> names;
  for (auto it = std::sregex_iterator(xml_text.begin(), xml_text.end(), kLabel);
       it != std::sregex_iterator(); ++it) {
    names.push_back(XmlUnescape((*it)[1].matched ? (*it)[1].str() : (*it)[2].str()));
  }
  return names;
}

MultiLabelDataset ParseMulan(const std::string& arff_text,
                             const std::string& xml_text, Split tag,
                             const std::string& source) {
  const std::vector<std::string> xml_labels = ParseMulanLabelNames(xml_text);
  if (xml_labels.empty()) throw ParseError(source, 0, "label list names no labels");

  std::vector<Attribute> attrs;
  std::istringstream in(arff_text);
  std::string raw;
  Cursor cur{source, 0};
  bool in_data = false;

  // Attribute index -> label or feature slot; -1 for the other kind.
  std::vector<int> label_slot, feature_slot;
  MultiLabelDataset ds;

  auto finish_header = [&] {
    std::unordered_map<std::string, int> by_name;
    for (int a = 0; a < static_cast<int>(attrs.size()); ++a) {
      if (!by_name.emplace(attrs[a].name, a).second) {
        cur.Fail("duplicate attribute '" + attrs[a].name + "'");
      }
    }
    std::unordered_map<std::string, bool> is_label;
    for (const std::string& name : xml_labels) {
      if (!by_name.count(name)) cur.Fail("label '" + name + "' is not an ARFF attribute");
      if (!is_label.emplace(name, true).second) cur.Fail("label '" + name + "' listed twice");
    }
    label_slot.assign(attrs.size(), -1);
    feature_slot.assign(attrs.size(), -1);
    int nl = 0, nf = 0;
    for (std::size_t a = 0; a < attrs.size(); ++a) {
      if (is_label.count(attrs[a].name)) {
        label_slot[a] = nl++;
        ds.label_names.push_back(attrs[a].name);
      } else {
        feature_slot[a] = nf++;
      }
    }
    ds.dim = nf;
  };

  auto add_row = [&](const std::vector<std::pair<int, double>>& cells) {
    std::vector<std::int8_t> bits(ds.label_names.size(), -1);
    std::vector<FeatureEntry> entries;
    for (const auto& [a, value] : cells) {
      if (label_slot[a] >= 0) {
        if (value != 0.0 && value != 1.0) {
          cur.Fail("label '" + attrs[a].name + "' must be 0 or 1");
        }
        bits[label_slot[a]] = value == 1.0 ? 1 : -1;
      } else if (value != 0.0) {
        entries.push_back({feature_slot[a], value});
      }
    }
    try {
      ds.instances.emplace_back(ds.dim, std::move(entries));
    } catch (const InputError& e) {
      cur.Fail(e.what());
    }
    ds.labelings.emplace_back(std::move(bits));
    ds.split.push_back(tag);
  };

  while (std::getline(in, raw)) {
    ++cur.line;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '%') continue;
    if (!in_data) {
      if (StartsWithNoCase(line, "@relation")) continue;
      if (StartsWithNoCase(line, "@attribute")) {
        std::string_view rest = line.substr(10);
        Attribute attr;
        attr.name = TakeToken(rest, cur);
        rest = Trim(rest);
        const std::string type = Lower(rest);
        if (type == "numeric" || type == "real" || type == "integer") {
          attr.binary_nominal = false;
        } else if (!rest.empty() && rest.front() == '{' && rest.back() == '}') {
          std::vector<std::string> values;
          for (std::string_view v : SplitFields(rest.substr(1, rest.size() - 2))) {
            values.push_back(Unquote(v));
          }
          std::sort(values.begin(), values.end());
          if (values != std::vector<std::string>{"0", "1"}) {
            cur.Fail("nominal attribute '" + attr.name + "' must have values {0,1}");
          }
          attr.binary_nominal = true;
        } else {
          cur.Fail("unsupported attribute type '" + std::string(rest) + "'");
        }
        attrs.push_back(std::move(attr));
        continue;
      }
      if (StartsWithNoCase(line, "@data")) {
        if (attrs.empty()) cur.Fail("no attributes declared");
        finish_header();
        in_data = true;
        continue;
      }
      cur.Fail("unexpected header line '" + std::string(line) + "'");
    }

    std::vector<std::pair<int, double>> cells;
    if (line.front() == '{') {
      const std::size_t close = line.find('}');
      if (close == std::string_view::npos) cur.Fail("unterminated sparse row");
      if (!Trim(line.substr(close + 1)).empty()) {
        cur.Fail("instance weights are not supported");
      }
      const std::string_view body = Trim(line.substr(1, close - 1));
      if (!body.empty()) {
        int last = -1;
        for (std::string_view field : SplitFields(body)) {
          field = Trim(field);
          const std::size_t sp = field.find_first_of(" \t");
          if (sp == std::string_view::npos) cur.Fail("sparse entry lacks a value");
          int a = -1;
          const auto idx = field.substr(0, sp);
          const auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), a);
          if (ec != std::errc() || ptr != idx.data() + idx.size() || a < 0 ||
              a >= static_cast<int>(attrs.size())) {
            cur.Fail("bad sparse index '" + std::string(idx) + "'");
          }
          if (a <= last) cur.Fail("sparse indices must increase");
          last = a;
          cells.emplace_back(a, ParseValue(attrs[a], field.substr(sp + 1), cur));
        }
      }
    } else {
      const auto fields = SplitFields(line);
      if (fields.size() != attrs.size()) {
        cur.Fail("row has " + std::to_string(fields.size()) + " values, expected " +
                 std::to_string(attrs.size()));
      }
      for (std::size_t a = 0; a < fields.size(); ++a) {
        cells.emplace_back(static_cast<int>(a), ParseValue(attrs[a], fields[a], cur));
      }
    }
    add_row(cells);
  }
  if (!in_data) throw ParseError(source, cur.line, "missing @data section");
  return ds;
}

}  // namespace internal

MultiLabelDataset LoadMulan(const std::filesystem::path& arff,
                            const std::filesystem::path& xml, Split tag) {
  return internal::ParseMulan(ReadFile(arff), ReadFile(xml), tag, arff.string());
}

MultiLabelDataset LoadMulanTrainTest(const std::filesystem::path& train_arff,
                                     const std::filesystem::path& test_arff,
                                     const std::filesystem::path& xml) {
  MultiLabelDataset ds = LoadMulan(train_arff, xml, Split::kTrain);
  MultiLabelDataset test = LoadMulan(test_arff, xml, Split::kTest);
  if (test.dim != ds.dim || test.label_names != ds.label_names) {
    throw FormatError("train and test files disagree on their attributes");
  }
  for (int i = 0; i < test.size(); ++i) {
    ds.instances.push_back(std::move(test.instances[i]));
    ds.labelings.push_back(std::move(test.labelings[i]));
    ds.split.push_back(Split::kTest);
  }
  return ds;
}

}  // namespace mlprior
