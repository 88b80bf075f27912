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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace jguard {

/// Detector scores with their binary labels.
struct ScoredSet {
  std::vector<double> scores;
  std::vector<int> labels;
};

/// Rank-based (Mann-Whitney) AUROC with midranks for ties: the probability
/// that a random positive outscores a random negative, ties counting half.
/// Throws UsageError unless both classes are present.
double auroc(std::span<const double> scores, std::span<const int> labels);
inline double auroc(const ScoredSet& s) { return auroc(s.scores, s.labels); }

/// Scores each column of a feature matrix (features x examples).
using FeatureScorer = std::function<std::vector<double>(const Eigen::MatrixXd& features)>;

struct FeatureImportance {
  std::string feature;
  int index;          // canonical feature index
  double mean_drop;   // baseline AUROC minus shuffled AUROC, averaged
};

/// Permutation importance over the journalism feature rows.
///
/// Each row is shuffled across examples `repeats` times with seeds derived
/// from (seed, feature, repeat); the result is sorted by mean AUROC drop,
/// descending, ties kept in canonical feature order. This is a model-agnostic
/// stand-in for Shapley-value attributions, not an implementation of them.
std::vector<FeatureImportance> permutation_importance(const FeatureScorer& scorer,
                                                      const Eigen::MatrixXd& features,
                                                      const std::vector<int>& labels,
                                                      std::uint64_t seed, int repeats);

/// One detector evaluated on one generator's test split.
struct EvalReport {
  std::string detector;
  std::string generator;
  double auroc = 0.0;
  std::size_t n_test = 0;
  std::string config_digest;
};

/// 16 hex digits of FNV-1a over the training configuration and corpus name.
std::string config_digest(const std::string& canonical_config, const std::string& corpus_name);

}  // namespace jguard
