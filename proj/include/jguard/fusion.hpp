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

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "jguard/error.hpp"
#include "jguard/jfeatures.hpp"

namespace jguard {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Layer widths of the guidance and classification heads.
///
///   guidance:       (d + n) -> guidance_hidden (relu) -> guidance_out
///   classification: guidance_out -> classifier_hidden (relu) -> 2
///
/// A guidance_hidden of 0 means max(1024, d + n): the hidden layer must be at
/// least as wide as its input.
struct FusionShape {
  int embedding_dim = 768;
  int feature_dim = kNumFeatures;
  int guidance_hidden = 0;
  int guidance_out = 256;
  int classifier_hidden = 32;

  int input_dim() const { return embedding_dim + feature_dim; }
  int resolved_guidance_hidden() const {
    return guidance_hidden > 0 ? guidance_hidden : std::max(1024, input_dim());
  }
};

template <typename Scalar>
struct DenseLayer {
  Mat<Scalar> weights;  // out x in
  Vec<Scalar> bias;     // out

  int in_dim() const { return static_cast<int>(weights.cols()); }
  int out_dim() const { return static_cast<int>(weights.rows()); }

  template <typename NewScalar>
  DenseLayer<NewScalar> cast() const {
    return {weights.template cast<NewScalar>(), bias.template cast<NewScalar>()};
  }
  bool operator==(const DenseLayer& other) const {
    return weights == other.weights && bias == other.bias;
  }
};

/// Guidance head (layers 0, 1) followed by the classification head (2, 3).
template <typename Scalar>
struct BasicFusionModel {
  static constexpr int kGuidanceHidden = 0;
  static constexpr int kGuidanceOut = 1;
  static constexpr int kClassifierHidden = 2;
  static constexpr int kLogits = 3;

  int embedding_dim = 0;
  int feature_dim = 0;
  std::array<DenseLayer<Scalar>, 4> layers;
  double dropout_rate = 0.2;
  std::uint64_t seed = 0;

  int input_dim() const { return embedding_dim + feature_dim; }

  template <typename NewScalar>
  BasicFusionModel<NewScalar> cast() const {
    BasicFusionModel<NewScalar> out;
    out.embedding_dim = embedding_dim;
    out.feature_dim = feature_dim;
    for (std::size_t k = 0; k < layers.size(); ++k) out.layers[k] = layers[k].template cast<NewScalar>();
    out.dropout_rate = dropout_rate;
    out.seed = seed;
    return out;
  }

  bool all_finite() const {
    for (const auto& layer : layers) {
      if (!layer.weights.allFinite() || !layer.bias.allFinite()) return false;
    }
    return true;
  }

  bool operator==(const BasicFusionModel& other) const {
    return embedding_dim == other.embedding_dim && feature_dim == other.feature_dim &&
           layers == other.layers && dropout_rate == other.dropout_rate && seed == other.seed;
  }
};

using FusionModel = BasicFusionModel<double>;

/// Weights uniform in +-1/sqrt(fan_in), biases zero, drawn layer by layer in
/// column-major order from Rng(seed).
FusionModel init_model(int embedding_dim, int feature_dim, std::uint64_t seed,
                       FusionShape shape = {});
FusionModel init_model(const FusionShape& shape, std::uint64_t seed);

/// Same topology with every weight and bias set to zero.
FusionModel zero_model(const FusionShape& shape);

// ---------------------------------------------------------------------------
// Forward pass

/// [emb, j] / ||[emb, j]||. Zero input stays zero.
template <typename DerivedE, typename DerivedJ>
Vec<typename DerivedE::Scalar> joint_input(const Eigen::MatrixBase<DerivedE>& emb,
                                           const Eigen::MatrixBase<DerivedJ>& j) {
  using Scalar = typename DerivedE::Scalar;
  Vec<Scalar> x(emb.size() + j.size());
  x << emb, j.template cast<Scalar>();
  const Scalar norm = x.norm();
  if (norm > Scalar(0)) x /= norm;
  return x;
}

template <typename Derived>
auto relu(const Eigen::MatrixBase<Derived>& z) {
  return z.cwiseMax(typename Derived::Scalar(0));
}

/// Column-wise softmax with max subtraction.
template <typename Derived>
Mat<typename Derived::Scalar> softmax_columns(const Eigen::MatrixBase<Derived>& logits) {
  using Scalar = typename Derived::Scalar;
  Mat<Scalar> out(logits.rows(), logits.cols());
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    const Scalar m = logits.col(c).maxCoeff();
    out.col(c) = (logits.col(c).array() - m).exp().matrix();
    out.col(c) /= out.col(c).sum();
  }
  return out;
}

/// Intermediate activations for a batch of joint inputs (one per column).
template <typename Scalar>
struct ForwardCache {
  Mat<Scalar> input;
  Mat<Scalar> hidden1_pre, hidden1;  // guidance hidden, after relu and dropout
  Mat<Scalar> guidance;              // C_l
  Mat<Scalar> hidden2_pre, hidden2;  // classifier hidden
  Mat<Scalar> logits;
  Mat<Scalar> probs;
};

/// Inverted-dropout keep masks (already divided by the keep probability).
template <typename Scalar>
struct DropoutMasks {
  Mat<Scalar> hidden1;
  Mat<Scalar> hidden2;
};

template <typename Scalar>
ForwardCache<Scalar> forward_batch(const BasicFusionModel<Scalar>& m, const Mat<Scalar>& joint,
                                   const DropoutMasks<Scalar>* masks = nullptr) {
  using M = BasicFusionModel<Scalar>;
  if (joint.rows() != m.input_dim()) {
    throw UsageError("joint input has " + std::to_string(joint.rows()) + " rows, model expects " +
                     std::to_string(m.input_dim()));
  }
  ForwardCache<Scalar> c;
  c.input = joint;
  const auto& l1 = m.layers[M::kGuidanceHidden];
  const auto& l2 = m.layers[M::kGuidanceOut];
  const auto& l3 = m.layers[M::kClassifierHidden];
  const auto& l4 = m.layers[M::kLogits];
  c.hidden1_pre = (l1.weights * joint).colwise() + l1.bias;
  c.hidden1 = relu(c.hidden1_pre);
  if (masks) c.hidden1.array() *= masks->hidden1.array();
  c.guidance = (l2.weights * c.hidden1).colwise() + l2.bias;
  c.hidden2_pre = (l3.weights * c.guidance).colwise() + l3.bias;
  c.hidden2 = relu(c.hidden2_pre);
  if (masks) c.hidden2.array() *= masks->hidden2.array();
  c.logits = (l4.weights * c.hidden2).colwise() + l4.bias;
  c.probs = softmax_columns(c.logits);
  return c;
}

template <typename Scalar>
struct ForwardResult {
  Eigen::Matrix<Scalar, 2, 1> logits;
  Scalar prob_ai;
};

/// Inference for a single example; dropout is never applied here.
template <typename Scalar, typename DerivedE>
ForwardResult<Scalar> forward(const BasicFusionModel<Scalar>& m,
                              const Eigen::MatrixBase<DerivedE>& emb, const FeatureVector& j) {
  if (emb.size() != m.embedding_dim || j.values.size() != m.feature_dim) {
    throw UsageError("embedding/feature dimensions do not match the model");
  }
  if (!emb.allFinite()) throw NumericError("embedding has non-finite entries");
  const Mat<Scalar> x = joint_input(emb.template cast<Scalar>(), j.values);
  const ForwardCache<Scalar> c = forward_batch(m, x);
  return {c.logits.col(0), c.probs(1, 0)};
}

/// Mean cross-entropy of a batch computed from logits via log-sum-exp;
/// labels are 0/1 per column.
template <typename Scalar>
Scalar cross_entropy(const Mat<Scalar>& logits, const std::vector<int>& labels) {
  using std::exp;
  using std::log;
  Scalar loss(0);
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    const Scalar m = logits.col(c).maxCoeff();
    const Scalar lse = m + log((logits.col(c).array() - m).exp().sum());
    loss += lse - logits(labels[c], c);
  }
  return loss / static_cast<Scalar>(logits.cols());
}

template <typename Scalar>
Scalar loss(const BasicFusionModel<Scalar>& m, const Mat<Scalar>& joint,
            const std::vector<int>& labels, const DropoutMasks<Scalar>* masks = nullptr) {
  return cross_entropy(forward_batch(m, joint, masks).logits, labels);
}

// ---------------------------------------------------------------------------
// Backward pass

/// Gradient of the mean cross-entropy, laid out like the model's layers.
template <typename Scalar>
struct Gradients {
  std::array<DenseLayer<Scalar>, 4> layers;
  Scalar loss;
};

template <typename Scalar>
Gradients<Scalar> backward(const BasicFusionModel<Scalar>& m, const ForwardCache<Scalar>& c,
                           const std::vector<int>& labels,
                           const DropoutMasks<Scalar>* masks = nullptr) {
  using M = BasicFusionModel<Scalar>;
  const Eigen::Index batch = c.input.cols();
  if (static_cast<Eigen::Index>(labels.size()) != batch) {
    throw UsageError("label count does not match batch size");
  }
  Gradients<Scalar> g;
  g.loss = cross_entropy(c.logits, labels);

  Mat<Scalar> delta = c.probs;  // d loss / d logits
  for (Eigen::Index k = 0; k < batch; ++k) delta(labels[k], k) -= Scalar(1);
  delta /= static_cast<Scalar>(batch);

  auto accumulate = [&](int layer, const Mat<Scalar>& d, const Mat<Scalar>& in) {
    g.layers[layer].weights = d * in.transpose();
    g.layers[layer].bias = d.rowwise().sum();
  };

  accumulate(M::kLogits, delta, c.hidden2);
  Mat<Scalar> d_hidden2 = m.layers[M::kLogits].weights.transpose() * delta;
  d_hidden2.array() *= (c.hidden2_pre.array() > Scalar(0)).template cast<Scalar>();
  if (masks) d_hidden2.array() *= masks->hidden2.array();

  accumulate(M::kClassifierHidden, d_hidden2, c.guidance);
  const Mat<Scalar> d_guidance = m.layers[M::kClassifierHidden].weights.transpose() * d_hidden2;

  accumulate(M::kGuidanceOut, d_guidance, c.hidden1);
  Mat<Scalar> d_hidden1 = m.layers[M::kGuidanceOut].weights.transpose() * d_guidance;
  d_hidden1.array() *= (c.hidden1_pre.array() > Scalar(0)).template cast<Scalar>();
  if (masks) d_hidden1.array() *= masks->hidden1.array();

  accumulate(M::kGuidanceHidden, d_hidden1, c.input);
  return g;
}

// ---------------------------------------------------------------------------
// Training

/// Hyperparameters for heads-only training.
struct TrainConfig {
  double learning_rate = 1e-3;
  double dropout_rate = 0.2;
  int max_epochs = 20;
  int patience = 3;
  int batch_size = 32;
  std::uint64_t seed = 0;

  /// Values used for end-to-end encoder fine-tuning (lr 2e-5, dropout 0.2).
  static TrainConfig end_to_end_preset();
  void validate() const;
  /// Stable text form, hashed into report digests.
  std::string canonical() const;
};

/// Examples for the fusion detector: embeddings and features column-aligned.
struct FusionDataset {
  Mat<double> embeddings;  // d x N
  Mat<double> features;    // n x N (normalized journalism vectors)
  std::vector<int> labels;

  Eigen::Index size() const { return embeddings.cols(); }
  /// Normalized [emb, j] columns.
  Mat<double> joint_inputs() const;
};

struct EpochStats {
  int epoch;  // 1-based
  double train_loss;
  double val_auroc;
};

struct TrainResult {
  FusionModel model;  // weights of the best validation epoch
  int best_epoch = 0; // 0 when no epoch ran
  double best_val_auroc = 0.0;
  std::vector<EpochStats> history;
};

using EpochObserver = std::function<void(const EpochStats&, const FusionModel&)>;

/// Mini-batch gradient descent on both heads with cross-entropy, dropout on
/// the two hidden layers, and early stopping on validation AUROC. The
/// returned model is the one after the best epoch (first one on ties).
TrainResult train_fusion(const FusionModel& initial, const FusionDataset& train,
                         const FusionDataset& val, const TrainConfig& cfg,
                         const EpochObserver& observer = {});

/// prob_ai for every column of the dataset, in order.
std::vector<double> predict_scores(const FusionModel& m, const FusionDataset& data);

double predict_score(const FusionModel& m, const Vec<double>& emb, const FeatureVector& j);

/// Deterministic unit-norm stand-in for an encoder embedding.
Vec<double> pseudo_embed(std::string_view id, int dim, std::uint64_t seed);

}  // namespace jguard
