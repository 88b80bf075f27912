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

#include "jguard/detector.hpp"

#include <set>

#include "jguard/error.hpp"
#include "jguard/jfeatures.hpp"

namespace jguard {

std::vector<int> labels_of(const Corpus& corpus) {
  std::vector<int> out;
  out.reserve(corpus.size());
  for (const Article& a : corpus.articles) out.push_back(a.label);
  return out;
}

std::string generator_tag(const Corpus& corpus) {
  std::set<std::string> tags;
  for (const Article& a : corpus.articles) {
    if (a.label == 1 && a.generator) tags.insert(*a.generator);
  }
  if (tags.empty()) return "unknown";
  if (tags.size() > 1) return "mixed";
  return *tags.begin();
}

std::vector<double> score_corpus(const Detector& detector, const Corpus& corpus,
                                 const EmbeddingProvider* embeddings) {
  std::vector<std::string_view> texts;
  texts.reserve(corpus.size());
  for (const Article& a : corpus.articles) texts.emplace_back(a.text);
  const Eigen::MatrixXd features = feature_matrix(extract_batch(texts));

  if (const auto* lr = std::get_if<LrModel>(&detector.model)) {
    return predict_scores(*lr, features);
  }
  const auto& fusion = std::get<FusionModel>(detector.model);
  if (!embeddings) throw UsageError("fusion detector '" + detector.name + "' needs embeddings");
  if (embeddings->dim() != fusion.embedding_dim) {
    throw DataError("embedding dimension " + std::to_string(embeddings->dim()) +
                    " does not match the model's " + std::to_string(fusion.embedding_dim));
  }
  FusionDataset data{embeddings->matrix_for(corpus), features, labels_of(corpus)};
  return predict_scores(fusion, data);
}

}  // namespace jguard
