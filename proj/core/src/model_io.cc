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

#include "mlprior/model_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include <nlohmann/json.hpp>
#include <zlib.h>

#include "mlprior/errors.h"

namespace mlprior {
namespace {

constexpr std::string_view kMagic = "mlprior-model";

void PutDouble(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

std::uint32_t Crc32(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in bounded chunks.
  while (!bytes.empty()) {
    const auto n = static_cast<uInt>(std::min<std::size_t>(bytes.size(), 1u << 30));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), n);
    bytes.remove_prefix(n);
  }
  return static_cast<std::uint32_t>(crc);
}

std::string CanonicalJson(const std::string& text, const char* what) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object()) throw FormatError(std::string(what) + " must be a JSON object");
    return j.dump();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

void PutMatrix(std::string& out, std::string_view name, const Eigen::MatrixXd& m,
               bool dense) {
  out += name;
  if (dense) {
    out += " dense " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (j) out += ' ';
        PutDouble(out, m(i, j));
      }
      out += '\n';
    }
    return;
  }
  std::size_t nnz = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) nnz += m(i, j) != 0.0 || std::signbit(m(i, j));
  }
  out += " sparse " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " +
         std::to_string(nnz) + "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0.0 && !std::signbit(m(i, j))) continue;
      out += std::to_string(i) + " " + std::to_string(j) + " ";
      PutDouble(out, m(i, j));
      out += '\n';
    }
  }
}

class Reader {
 public:
  Reader(std::string_view text, const std::string& source)
      : text_(text), source_(source) {}

  bool AtEnd() const { return pos_ >= text_.size(); }

  std::string_view NextLine() {
    if (AtEnd()) Fail("unexpected end of file");
    const std::size_t nl = text_.find('\n', pos_);
    const std::size_t end = nl == std::string_view::npos ? text_.size() : nl;
    std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    return line;
  }

  // "key rest" -> rest.
  std::string_view Expect(std::string_view key) {
    std::string_view line = NextLine();
    if (line.substr(0, key.size()) != key ||
        (line.size() > key.size() && line[key.size()] != ' ')) {
      Fail("expected '" + std::string(key) + "'");
    }
    return line.size() > key.size() ? line.substr(key.size() + 1) : std::string_view();
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw FormatError(source_ + ":" + std::to_string(line_) + ": " + what);
  }

  template <typename T>
  T Number(std::string_view tok) const {
    T v{};
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      Fail("malformed number '" + std::string(tok) + "'");
    }
    return v;
  }

  std::vector<std::string_view> Tokens(std::string_view s) const {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && s[i] == ' ') ++i;
      const std::size_t start = i;
      while (i < s.size() && s[i] != ' ') ++i;
      if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
  }

  Eigen::VectorXd Row(std::string_view s, Eigen::Index n) const {
    const auto toks = Tokens(s);
    if (static_cast<Eigen::Index>(toks.size()) != n) {
      Fail("expected " + std::to_string(n) + " values, got " + std::to_string(toks.size()));
    }
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = Number<double>(toks[i]);
    return v;
  }

  Eigen::MatrixXd Matrix(std::string_view name, Eigen::Index rows, Eigen::Index cols) {
    const auto head = Tokens(Expect(name));
    if (head.size() < 3) Fail("bad matrix header for " + std::string(name));
    if (Number<long>(head[1]) != rows || Number<long>(head[2]) != cols) {
      Fail(std::string(name) + " has the wrong shape");
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    if (head[0] == "dense" && head.size() == 3) {
      for (Eigen::Index i = 0; i < rows; ++i) m.row(i) = Row(NextLine(), cols).transpose();
    } else if (head[0] == "sparse" && head.size() == 4) {
      const long nnz = Number<long>(head[3]);
      for (long k = 0; k < nnz; ++k) {
        const auto toks = Tokens(NextLine());
        if (toks.size() != 3) Fail("bad sparse entry");
        const long i = Number<long>(toks[0]);
        const long j = Number<long>(toks[1]);
        if (i < 0 || i >= rows || j < 0 || j >= cols) Fail("sparse index out of range");
        m(i, j) = Number<double>(toks[2]);
      }
    } else {
      Fail("unknown matrix storage '" + std::string(head[0]) + "'");
    }
    return m;
  }

 private:
  std::string_view text_;
  const std::string& source_;
  std::size_t pos_ = 0;
  long line_ = 0;
};

}  // namespace

bool operator==(const ModelFile& a, const ModelFile& b) {
  return a.params == b.params && a.label_names == b.label_names &&
         a.scaler == b.scaler &&
         nlohmann::json::parse(a.config_json) == nlohmann::json::parse(b.config_json) &&
         nlohmann::json::parse(a.metrics_json) == nlohmann::json::parse(b.metrics_json);
}

std::string SerializeModel(const ModelFile& model) {
  const ModelParams& p = model.params;
  p.Validate();
  const int v = p.num_labels();
  const int d = p.dim();
  if (static_cast<int>(model.label_names.size()) != v) {
    throw DimensionError("model has " + std::to_string(v) + " labels but " +
                         std::to_string(model.label_names.size()) + " names");
  }
  if (model.scaler && model.scaler->size() != d) {
    throw DimensionError("scaler length does not match the feature dimension");
  }
  const bool dense = v <= kDenseModelMaxLabels;
  std::string out;
  out += std::string(kMagic) + " " + std::to_string(kModelFormatVersion) + "\n";
  out += "dim " + std::to_string(d) + "\n";
  out += "labels " + std::to_string(v) + "\n";
  out += "sign " + std::string(ToString(p.sign)) + "\n";
  out += "label_names " + nlohmann::json(model.label_names).dump() + "\n";
  if (model.scaler) {
    out += "scaler " + std::to_string(d) + "\n";
    for (Eigen::Index i = 0; i < d; ++i) {
      if (i) out += ' ';
      PutDouble(out, (*model.scaler)[i]);
    }
    out += '\n';
  } else {
    out += "scaler none\n";
  }
  out += "config " + CanonicalJson(model.config_json, "config") + "\n";
  out += "metrics " + CanonicalJson(model.metrics_json, "metrics") + "\n";
  PutMatrix(out, "W", p.W, dense);
  out += "b";
  for (Eigen::Index i = 0; i < v; ++i) {
    out += ' ';
    PutDouble(out, p.b[i]);
  }
  out += '\n';
  PutMatrix(out, "A", p.A, dense);
  char crc[16];
  std::snprintf(crc, sizeof(crc), "%08x", Crc32(out));
  out += "checksum ";
  out += crc;
  out += '\n';
  return out;
}

ModelFile DeserializeModel(const std::string& text, const std::string& source) {
  Reader r(text, source);
  {
    const auto toks = r.Tokens(r.NextLine());
    if (toks.size() != 2 || toks[0] != kMagic) r.Fail("not an mlprior model file");
    const int version = r.Number<int>(toks[1]);
    if (version != kModelFormatVersion) {
      r.Fail("unsupported model format version " + std::to_string(version) +
             " (this build reads version " + std::to_string(kModelFormatVersion) + ")");
    }
  }
  const std::size_t mark = text.rfind("checksum ");
  if (mark == std::string::npos || (mark > 0 && text[mark - 1] != '\n')) {
    r.Fail("missing checksum line");
  }
  {
    std::string_view stated(text);
    stated = stated.substr(mark + 9);
    while (!stated.empty() && (stated.back() == '\n' || stated.back() == '\r')) {
      stated.remove_suffix(1);
    }
    char expect[16];
    std::snprintf(expect, sizeof(expect), "%08x",
                  Crc32(std::string_view(text).substr(0, mark)));
    if (stated != expect) {
      throw FormatError(source + ": checksum mismatch (file says " +
                        std::string(stated) + ", content hashes to " + expect + ")");
    }
  }

  ModelFile m;
  const long d = r.Number<long>(r.Expect("dim"));
  const long v = r.Number<long>(r.Expect("labels"));
  if (d < 0 || v <= 0) r.Fail("bad dimensions");
  try {
    m.params.sign = ParseSignConstraint(r.Expect("sign"));
  } catch (const InvalidArgument& e) {
    r.Fail(e.what());
  }
  try {
    m.label_names = nlohmann::json::parse(r.Expect("label_names")).get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    r.Fail(std::string("bad label names: ") + e.what());
  }
  if (static_cast<long>(m.label_names.size()) != v) r.Fail("label name count mismatch");
  const std::string_view scaler = r.Expect("scaler");
  if (scaler != "none") {
    if (r.Number<long>(scaler) != d) r.Fail("scaler length mismatch");
    m.scaler = r.Row(r.NextLine(), d);
  }
  m.config_json = CanonicalJson(std::string(r.Expect("config")), "config");
  m.metrics_json = CanonicalJson(std::string(r.Expect("metrics")), "metrics");
  m.params.W = r.Matrix("W", d, v);
  m.params.b = r.Row(r.Expect("b"), v);
  m.params.A = r.Matrix("A", v, v);
  r.Expect("checksum");
  try {
    m.params.Validate();
  } catch (const InputError& e) {
    r.Fail(e.what());
  }
  return m;
}

void SaveModel(const ModelFile& model, const std::filesystem::path& path) {
  const std::string text = SerializeModel(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

ModelFile LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return DeserializeModel(ss.str(), path.string());
}

}  // namespace mlprior
