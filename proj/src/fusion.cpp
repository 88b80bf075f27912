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

#include "jguard/fusion.hpp"

#include <cstdio>
#include <limits>
#include <numeric>

#include "jguard/eval.hpp"
#include "jguard/random.hpp"

namespace jguard {
namespace {

DenseLayer<double> uniform_layer(int in, int out, Rng& rng) {
  DenseLayer<double> layer{Mat<double>(out, in), Vec<double>::Zero(out)};
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      layer.weights(r, c) = rng.uniform(-bound, bound);
    }
  }
  return layer;
}

void check_shape(const FusionShape& s) {
  if (s.embedding_dim < 1 || s.feature_dim < 1) throw UsageError("d and n must be at least 1");
  if (s.guidance_out < 1 || s.classifier_hidden < 1) throw UsageError("layer widths must be positive");
  if (s.resolved_guidance_hidden() < s.input_dim()) {
    throw UsageError("guidance hidden width " + std::to_string(s.resolved_guidance_hidden()) +
                     " is smaller than its input width " + std::to_string(s.input_dim()));
  }
}

Mat<double> gather_columns(const Mat<double>& m, const std::vector<std::size_t>& order,
                           std::size_t begin, std::size_t end) {
  Mat<double> out(m.rows(), static_cast<Eigen::Index>(end - begin));
  for (std::size_t k = begin; k < end; ++k) {
    out.col(static_cast<Eigen::Index>(k - begin)) = m.col(static_cast<Eigen::Index>(order[k]));
  }
  return out;
}

Mat<double> dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, Rng& rng) {
  Mat<double> mask(rows, cols);
  const double keep_scale = 1.0 / (1.0 - rate);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      mask(r, c) = rng.bernoulli(rate) ? 0.0 : keep_scale;
    }
  }
  return mask;
}

void check_dataset(const FusionDataset& data, const FusionModel& m, const char* which) {
  if (data.size() == 0) throw UsageError(std::string(which) + " set is empty");
  if (data.embeddings.rows() != m.embedding_dim || data.features.rows() != m.feature_dim ||
      data.features.cols() != data.size() ||
      static_cast<Eigen::Index>(data.labels.size()) != data.size()) {
    throw UsageError(std::string(which) + " set dimensions do not match the model");
  }
}

bool has_both_classes(const std::vector<int>& labels) {
  bool pos = false, neg = false;
  for (int y : labels) (y == 1 ? pos : neg) = true;
  return pos && neg;
}

}  // namespace

FusionModel init_model(const FusionShape& shape, std::uint64_t seed) {
  check_shape(shape);
  Rng rng(seed);
  FusionModel m;
  m.embedding_dim = shape.embedding_dim;
  m.feature_dim = shape.feature_dim;
  m.seed = seed;
  const int h1 = shape.resolved_guidance_hidden();
  m.layers[FusionModel::kGuidanceHidden] = uniform_layer(shape.input_dim(), h1, rng);
  m.layers[FusionModel::kGuidanceOut] = uniform_layer(h1, shape.guidance_out, rng);
  m.layers[FusionModel::kClassifierHidden] =
      uniform_layer(shape.guidance_out, shape.classifier_hidden, rng);
  m.layers[FusionModel::kLogits] = uniform_layer(shape.classifier_hidden, 2, rng);
  return m;
}

FusionModel init_model(int embedding_dim, int feature_dim, std::uint64_t seed, FusionShape shape) {
  shape.embedding_dim = embedding_dim;
  shape.feature_dim = feature_dim;
  return init_model(shape, seed);
}

FusionModel zero_model(const FusionShape& shape) {
  FusionModel m = init_model(shape, 0);
  for (auto& layer : m.layers) {
    layer.weights.setZero();
    layer.bias.setZero();
  }
  return m;
}

TrainConfig TrainConfig::end_to_end_preset() {
  TrainConfig cfg;
  cfg.learning_rate = 2e-5;
  cfg.dropout_rate = 0.2;
  return cfg;
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw UsageError("learning rate must be positive");
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) throw UsageError("dropout rate must be in [0, 1)");
  if (patience < 1) throw UsageError("patience must be at least 1");
  if (max_epochs < 0) throw UsageError("max_epochs must be non-negative");
  if (batch_size < 1) throw UsageError("batch size must be at least 1");
}

std::string TrainConfig::canonical() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "fusion lr=%.17g dropout=%.17g max_epochs=%d patience=%d batch=%d seed=%llu",
                learning_rate, dropout_rate, max_epochs, patience, batch_size,
                static_cast<unsigned long long>(seed));
  return buf;
}

Mat<double> FusionDataset::joint_inputs() const {
  Mat<double> x(embeddings.rows() + features.rows(), embeddings.cols());
  for (Eigen::Index c = 0; c < embeddings.cols(); ++c) {
    x.col(c) = joint_input(embeddings.col(c), features.col(c));
  }
  return x;
}

std::vector<double> predict_scores(const FusionModel& m, const FusionDataset& data) {
  if (data.embeddings.rows() != m.embedding_dim || data.features.rows() != m.feature_dim) {
    throw UsageError("dataset dimensions do not match the model");
  }
  std::vector<double> out(static_cast<std::size_t>(data.size()));
  if (data.size() == 0) return out;
  const ForwardCache<double> c = forward_batch(m, data.joint_inputs());
  for (Eigen::Index k = 0; k < data.size(); ++k) out[static_cast<std::size_t>(k)] = c.probs(1, k);
  return out;
}

double predict_score(const FusionModel& m, const Vec<double>& emb, const FeatureVector& j) {
  return forward(m, emb, j).prob_ai;
}

TrainResult train_fusion(const FusionModel& initial, const FusionDataset& train,
                         const FusionDataset& val, const TrainConfig& cfg,
                         const EpochObserver& observer) {
  cfg.validate();
  TrainResult result;
  result.model = initial;
  if (cfg.max_epochs == 0) return result;

  check_dataset(train, initial, "training");
  check_dataset(val, initial, "validation");
  if (!has_both_classes(val.labels)) throw UsageError("validation set needs both classes");

  const Mat<double> x_train = train.joint_inputs();
  const std::size_t n = static_cast<std::size_t>(train.size());
  const auto batch = static_cast<std::size_t>(cfg.batch_size);

  FusionModel model = initial;
  model.dropout_rate = cfg.dropout_rate;
  result.model.dropout_rate = cfg.dropout_rate;
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  double best = -std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    rng.shuffle(order);
    double loss_sum = 0.0;
    for (std::size_t begin = 0; begin < n; begin += batch) {
      const std::size_t end = std::min(n, begin + batch);
      const Mat<double> xb = gather_columns(x_train, order, begin, end);
      std::vector<int> yb;
      yb.reserve(end - begin);
      for (std::size_t k = begin; k < end; ++k) yb.push_back(train.labels[order[k]]);

      DropoutMasks<double> masks;
      const DropoutMasks<double>* mask_ptr = nullptr;
      if (cfg.dropout_rate > 0.0) {
        const Eigen::Index cols = xb.cols();
        masks.hidden1 = dropout_mask(model.layers[FusionModel::kGuidanceHidden].out_dim(), cols,
                                     cfg.dropout_rate, rng);
        masks.hidden2 = dropout_mask(model.layers[FusionModel::kClassifierHidden].out_dim(), cols,
                                     cfg.dropout_rate, rng);
        mask_ptr = &masks;
      }
      const ForwardCache<double> cache = forward_batch(model, xb, mask_ptr);
      const Gradients<double> g = backward(model, cache, yb, mask_ptr);
      if (!std::isfinite(g.loss)) {
        throw NumericError("non-finite loss at epoch " + std::to_string(epoch) + ", batch starting at " +
                           std::to_string(begin));
      }
      loss_sum += g.loss * static_cast<double>(end - begin);
      for (std::size_t k = 0; k < model.layers.size(); ++k) {
        model.layers[k].weights -= cfg.learning_rate * g.layers[k].weights;
        model.layers[k].bias -= cfg.learning_rate * g.layers[k].bias;
      }
    }
    if (!model.all_finite()) throw NumericError("weights diverged at epoch " + std::to_string(epoch));

    const EpochStats stats{epoch, loss_sum / static_cast<double>(n),
                           auroc(predict_scores(model, val), val.labels)};
    result.history.push_back(stats);
    if (observer) observer(stats, model);
    if (stats.val_auroc > best) {
      best = stats.val_auroc;
      result.model = model;
      result.best_epoch = epoch;
      result.best_val_auroc = best;
      since_best = 0;
    } else if (++since_best >= cfg.patience) {
      break;
    }
  }
  return result;
}

Vec<double> pseudo_embed(std::string_view id, int dim, std::uint64_t seed) {
  if (dim < 1) throw UsageError("embedding dimension must be at least 1");
  Rng rng(derive_seed(seed, fnv1a64(id)));
  Vec<double> v(dim);
  for (int k = 0; k < dim; ++k) v[k] = rng.normal();
  return v / v.norm();
}

}  // namespace jguard
