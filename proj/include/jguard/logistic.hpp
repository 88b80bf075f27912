// Copyright 2026 The jguard Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "jguard/jfeatures.hpp"

namespace jguard {

/// Logistic regression over journalism feature vectors.
template <typename Scalar>
struct BasicLrModel {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
  Scalar bias = Scalar(0);

  int dim() const { return static_cast<int>(weights.size()); }
  bool operator==(const BasicLrModel& other) const {
    return weights == other.weights && bias == other.bias;
  }
};

using LrModel = BasicLrModel<double>;

template <typename Scalar>
Scalar sigmoid(Scalar z) {
  using std::exp;
  return z >= Scalar(0) ? Scalar(1) / (Scalar(1) + exp(-z)) : exp(z) / (Scalar(1) + exp(z));
}

struct LrConfig {
  double learning_rate = 1.0;
  int epochs = 2000;
  double l2 = 0.0;
  int batch_size = 0;  // 0 = full batch
  std::uint64_t seed = 0;

  void validate() const;
  std::string canonical() const;
};

/// Minimizes mean logistic loss (+ l2/2 * ||w||^2) by gradient descent from
/// zero weights. Mini-batches, when enabled, are drawn in a seeded order.
/// Throws UsageError on size mismatch or when only one class is present.
LrModel train_lr(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                 const LrConfig& cfg = {});

/// Matrix form: one example per column.
LrModel train_lr(const Eigen::MatrixXd& x, const std::vector<int>& y, const LrConfig& cfg = {});

double predict_score(const LrModel& m, const FeatureVector& x);
std::vector<double> predict_scores(const LrModel& m, const Eigen::MatrixXd& x);

/// Stacks feature vectors as columns.
Eigen::MatrixXd feature_matrix(const std::vector<FeatureVector>& x);

}  // namespace jguard
