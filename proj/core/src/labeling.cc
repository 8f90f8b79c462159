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

#include "mlprior/labeling.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlprior/errors.h"

namespace mlprior {

Labeling::Labeling(std::vector<std::int8_t> bits) : bits_(std::move(bits)) {
  for (std::int8_t v : bits_) {
    if (v != 1 && v != -1) {
      throw InvalidArgument("labeling entries must be -1 or +1, got " +
                            std::to_string(v));
    }
  }
}

Labeling Labeling::AllNegative(int num_labels) {
  return Labeling(std::vector<std::int8_t>(num_labels, -1));
}

Labeling Labeling::AllPositive(int num_labels) {
  return Labeling(std::vector<std::int8_t>(num_labels, 1));
}

Labeling Labeling::FromCode(std::uint64_t code, int num_labels) {
  std::vector<std::int8_t> bits(num_labels);
  for (int i = 0; i < num_labels; ++i) {
    bits[i] = ((code >> i) & 1u) ? 1 : -1;
  }
  return Labeling(std::move(bits));
}

Labeling Labeling::FromSigns(const Eigen::VectorXd& u) {
  std::vector<std::int8_t> bits(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) bits[i] = u[i] >= 0.0 ? 1 : -1;
  return Labeling(std::move(bits));
}

void Labeling::Set(int i, int sign) {
  if (sign != 1 && sign != -1) throw InvalidArgument("sign must be -1 or +1");
  bits_[i] = static_cast<std::int8_t>(sign);
}

int Labeling::CountPositive() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
}

int Labeling::Sum() const { return 2 * CountPositive() - size(); }

int Labeling::Dot(const Labeling& other) const {
  if (other.size() != size()) throw DimensionError("labeling length mismatch");
  int s = 0;
  for (int i = 0; i < size(); ++i) s += bits_[i] * other.bits_[i];
  return s;
}

std::uint64_t Labeling::Code() const {
  if (size() > 64) throw InvalidArgument("labeling too long for a 64-bit code");
  std::uint64_t code = 0;
  for (int i = 0; i < size(); ++i) {
    if (bits_[i] > 0) code |= std::uint64_t{1} << i;
  }
  return code;
}

Eigen::VectorXd Labeling::ToVector() const {
  Eigen::VectorXd u(size());
  for (int i = 0; i < size(); ++i) u[i] = bits_[i];
  return u;
}

FeatureVector::FeatureVector(int dim, std::vector<FeatureEntry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim < 0) throw InvalidArgument("negative feature dimension");
  std::sort(entries_.begin(), entries_.end(),
            [](const FeatureEntry& a, const FeatureEntry& b) {
              return a.index < b.index;
            });
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const FeatureEntry& e = entries_[k];
    if (e.index < 0 || e.index >= dim) {
      throw DimensionError("feature index " + std::to_string(e.index) +
                           " out of range for dimension " +
                           std::to_string(dim));
    }
    if (!std::isfinite(e.value)) {
      throw InvalidArgument("non-finite feature value at index " +
                            std::to_string(e.index));
    }
    if (k > 0 && entries_[k - 1].index == e.index) {
      throw InvalidArgument("duplicate feature index " +
                            std::to_string(e.index));
    }
  }
}

FeatureVector FeatureVector::FromDense(const Eigen::VectorXd& x) {
  std::vector<FeatureEntry> entries;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) entries.push_back({static_cast<int>(i), x[i]});
  }
  return FeatureVector(static_cast<int>(x.size()), std::move(entries));
}

Eigen::VectorXd FeatureVector::ToDense() const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim_);
  for (const FeatureEntry& e : entries_) x[e.index] = e.value;
  return x;
}

Eigen::VectorXd TransposeTimes(const Eigen::MatrixXd& W,
                               const FeatureVector& x) {
  if (W.rows() != x.dim()) {
    throw DimensionError("feature dimension " + std::to_string(x.dim()) +
                         " does not match classifier rows " +
                         std::to_string(W.rows()));
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(W.cols());
  for (const FeatureEntry& e : x.entries()) {
    out.noalias() += e.value * W.row(e.index).transpose();
  }
  return out;
}

}  // namespace mlprior
