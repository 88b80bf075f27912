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

#include <string>
#include <vector>

#include "jguard/corpus.hpp"
#include "jguard/embedding.hpp"
#include "jguard/model_io.hpp"

namespace jguard {

/// A named trained model; the name labels report rows.
struct Detector {
  std::string name;
  AnyModel model;

  bool needs_embeddings() const { return std::holds_alternative<FusionModel>(model); }
};

/// AI-class probability for every article, in corpus order. Journalism
/// features are extracted from the article text; fusion models additionally
/// draw embeddings from `embeddings`, which must then be non-null.
std::vector<double> score_corpus(const Detector& detector, const Corpus& corpus,
                                 const EmbeddingProvider* embeddings);

std::vector<int> labels_of(const Corpus& corpus);

/// The generator tag shared by the corpus's AI articles; "mixed" when they
/// disagree and "unknown" when none carries one.
std::string generator_tag(const Corpus& corpus);

}  // namespace jguard
