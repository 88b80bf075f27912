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

#include "jguard/logistic.hpp"

#include <cstdio>
#include <numeric>

#include "jguard/error.hpp"
#include "jguard/random.hpp"

namespace jguard {

void LrConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw UsageError("learning rate must be positive");
  }
  if (epochs < 0) throw UsageError("epochs must be non-negative");
  if (!(l2 >= 0.0)) throw UsageError("l2 penalty must be non-negative");
  if (batch_size < 0) throw UsageError("batch size must be non-negative");
}

std::string LrConfig::canonical() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "lr lr=%.17g epochs=%d l2=%.17g batch=%d seed=%llu", learning_rate,
                epochs, l2, batch_size, static_cast<unsigned long long>(seed));
  return buf;
}

Eigen::MatrixXd feature_matrix(const std::vector<FeatureVector>& x) {
  Eigen::MatrixXd m(kNumFeatures, static_cast<Eigen::Index>(x.size()));
  for (std::size_t k = 0; k < x.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = x[k].values;
  return m;
}

LrModel train_lr(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                 const LrConfig& cfg) {
  return train_lr(feature_matrix(x), y, cfg);
}

LrModel train_lr(const Eigen::MatrixXd& x, const std::vector<int>& y, const LrConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(x.cols());
  if (n != y.size()) throw UsageError("feature and label counts differ");
  if (n < 2) throw UsageError("logistic regression needs at least two examples");
  std::size_t positives = 0;
  for (int label : y) {
    if (label != 0 && label != 1) throw UsageError("labels must be 0 or 1");
    positives += static_cast<std::size_t>(label);
  }
  if (positives == 0 || positives == n) throw UsageError("training labels contain a single class");
  if (!x.allFinite()) throw NumericError("features contain non-finite values");

  LrModel m;
  m.weights = Eigen::VectorXd::Zero(x.rows());
  const std::size_t batch = cfg.batch_size == 0 ? n : static_cast<std::size_t>(cfg.batch_size);
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (batch < n) rng.shuffle(order);
    for (std::size_t begin = 0; begin < n; begin += batch) {
      const std::size_t end = std::min(n, begin + batch);
      Eigen::VectorXd grad_w = Eigen::VectorXd::Zero(x.rows());
      double grad_b = 0.0;
      for (std::size_t k = begin; k < end; ++k) {
        const auto col = static_cast<Eigen::Index>(order[k]);
        const double residual = sigmoid(m.weights.dot(x.col(col)) + m.bias) - y[order[k]];
        grad_w += residual * x.col(col);
        grad_b += residual;
      }
      const double scale = 1.0 / static_cast<double>(end - begin);
      m.weights -= cfg.learning_rate * (scale * grad_w + cfg.l2 * m.weights);
      m.bias -= cfg.learning_rate * scale * grad_b;
    }
    if (!m.weights.allFinite() || !std::isfinite(m.bias)) {
      throw NumericError("logistic regression diverged at epoch " + std::to_string(epoch + 1));
    }
  }
  return m;
}

double predict_score(const LrModel& m, const FeatureVector& x) {
  if (m.dim() != kNumFeatures) throw UsageError("model dimension does not match feature vector");
  return sigmoid(m.weights.dot(x.values) + m.bias);
}

std::vector<double> predict_scores(const LrModel& m, const Eigen::MatrixXd& x) {
  if (x.rows() != m.dim()) throw UsageError("model dimension does not match feature matrix");
  std::vector<double> out(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index k = 0; k < x.cols(); ++k) {
    out[static_cast<std::size_t>(k)] = sigmoid(m.weights.dot(x.col(k)) + m.bias);
  }
  return out;
}

}  // namespace jguard
