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

#ifndef MLPRIOR_LABELING_H_
#define MLPRIOR_LABELING_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mlprior {

// A signed labeling in {-1,+1}^V. +1 marks a present label.
class Labeling {
 public:
  Labeling() = default;
  explicit Labeling(std::vector<std::int8_t> bits);

  static Labeling AllNegative(int num_labels);
  static Labeling AllPositive(int num_labels);
  // Bit i of `code` set means entry i is +1.
  static Labeling FromCode(std::uint64_t code, int num_labels);
  // Entry-wise sign with sign(0) := +1.
  static Labeling FromSigns(const Eigen::VectorXd& u);

  int size() const { return static_cast<int>(bits_.size()); }
  int operator[](int i) const { return bits_[i]; }
  void Flip(int i) { bits_[i] = static_cast<std::int8_t>(-bits_[i]); }
  void Set(int i, int sign);

  int CountPositive() const;
  // Sum of entries, i.e. y^T 1 = 2k - V.
  int Sum() const;
  int Dot(const Labeling& other) const;
  std::uint64_t Code() const;

  Eigen::VectorXd ToVector() const;
  std::span<const std::int8_t> bits() const { return bits_; }

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  std::vector<std::int8_t> bits_;
};

struct FeatureEntry {
  int index;
  double value;
  friend bool operator==(const FeatureEntry&, const FeatureEntry&) = default;
};

// Sparse feature row x in R^d; entries sorted by index, no duplicates.
class FeatureVector {
 public:
  FeatureVector() = default;
  FeatureVector(int dim, std::vector<FeatureEntry> entries);
  static FeatureVector FromDense(const Eigen::VectorXd& x);

  int dim() const { return dim_; }
  std::span<const FeatureEntry> entries() const { return entries_; }
  Eigen::VectorXd ToDense() const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  int dim_ = 0;
  std::vector<FeatureEntry> entries_;
};

// Returns W^T x for W of shape d x V.
Eigen::VectorXd TransposeTimes(const Eigen::MatrixXd& W, const FeatureVector& x);

}  // namespace mlprior

#endif  // MLPRIOR_LABELING_H_
