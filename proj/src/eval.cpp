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

#include "jguard/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "jguard/error.hpp"
#include "jguard/jfeatures.hpp"
#include "jguard/random.hpp"

namespace jguard {

double auroc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw UsageError("scores and labels differ in length");
  const std::size_t n = scores.size();
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw UsageError("labels must be 0 or 1");
    if (std::isnan(scores[i])) throw NumericError("score is NaN");
    n_pos += static_cast<std::size_t>(labels[i]);
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) throw UsageError("AUROC needs both classes");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of 1-based midranks of the positives; each midrank is a multiple of
  // 1/2, so the sum is exact in double for any practical n.
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) rank_sum += midrank;
    }
    i = j;
  }
  const double p = static_cast<double>(n_pos);
  const double u = rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(n_neg));
}

std::vector<FeatureImportance> permutation_importance(const FeatureScorer& scorer,
                                                      const Eigen::MatrixXd& features,
                                                      const std::vector<int>& labels,
                                                      std::uint64_t seed, int repeats) {
  if (repeats < 1) throw UsageError("repeats must be at least 1");
  if (features.cols() != static_cast<Eigen::Index>(labels.size())) {
    throw UsageError("feature matrix and labels differ in size");
  }
  const double baseline = auroc(scorer(features), labels);
  const auto n = static_cast<std::size_t>(features.cols());

  std::vector<FeatureImportance> out;
  for (Eigen::Index f = 0; f < features.rows(); ++f) {
    double total_drop = 0.0;
    for (int r = 0; r < repeats; ++r) {
      Rng rng(derive_seed(seed, (static_cast<std::uint64_t>(f) << 32) | static_cast<std::uint32_t>(r)));
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      rng.shuffle(perm);
      Eigen::MatrixXd shuffled = features;
      for (std::size_t k = 0; k < n; ++k) {
        shuffled(f, static_cast<Eigen::Index>(k)) = features(f, static_cast<Eigen::Index>(perm[k]));
      }
      total_drop += baseline - auroc(scorer(shuffled), labels);
    }
    const std::string name = f < kNumFeatures ? std::string(kFeatureNames[static_cast<std::size_t>(f)])
                                              : "feature_" + std::to_string(f);
    out.push_back({name, static_cast<int>(f), total_drop / repeats});
  }
  std::stable_sort(out.begin(), out.end(), [](const FeatureImportance& a, const FeatureImportance& b) {
    return a.mean_drop > b.mean_drop;
  });
  return out;
}

std::string config_digest(const std::string& canonical_config, const std::string& corpus_name) {
  const std::uint64_t h = fnv1a64(corpus_name, fnv1a64(canonical_config + '\x1f'));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace jguard
