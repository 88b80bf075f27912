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

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jguard/corpus.hpp"
#include "jguard/detector.hpp"

namespace jguard {

/// ASCII character -> replacement code point.
using VowelMap = std::vector<std::pair<char, char32_t>>;

/// a -> U+0430, e -> U+0435, o -> U+043E.
const VowelMap& default_vowel_map();

enum class AttackKind { kIdentity, kCyrillic, kParaphraseFile };

std::string_view to_string(AttackKind kind);

struct AttackSpec {
  AttackKind kind = AttackKind::kCyrillic;
  std::optional<std::filesystem::path> paraphrase_path;
  VowelMap vowel_map = default_vowel_map();

  static AttackSpec identity() { return {AttackKind::kIdentity, std::nullopt, default_vowel_map()}; }
  static AttackSpec cyrillic() { return {AttackKind::kCyrillic, std::nullopt, default_vowel_map()}; }
  static AttackSpec paraphrase(std::filesystem::path path) {
    return {AttackKind::kParaphraseFile, std::move(path), default_vowel_map()};
  }
  void validate() const;
};

/// Replaces every mapped ASCII character; code-point count is unchanged.
std::string cyrillic_inject(std::string_view text, const VowelMap& map = default_vowel_map());

/// Substitutes paraphrased texts by id. Throws DataError for ids not in the
/// corpus.
Corpus apply_paraphrase(const Corpus& corpus, const std::vector<Paraphrase>& paraphrases);
Corpus apply_paraphrase(const Corpus& corpus, const std::filesystem::path& paraphrase_path);

/// Perturbs every article of the corpus (both classes) per the spec.
Corpus apply_attack(const Corpus& corpus, const AttackSpec& spec);

struct RobustnessReport {
  std::string detector;
  std::string generator;
  std::string attack;
  double auroc_pre = 0.0;
  double auroc_post = 0.0;
  double delta = 0.0;  // auroc_pre - auroc_post
};

RobustnessReport make_robustness_report(std::string detector, std::string generator,
                                        std::string attack, double auroc_pre, double auroc_post);

/// Scores the clean and the attacked test corpus and reports the AUROC drop.
/// Fusion detectors read pre-attack embeddings from `embeddings_pre` and
/// post-attack ones from `embeddings_post`.
RobustnessReport robustness_eval(const Detector& detector, const Corpus& test,
                                 const EmbeddingProvider* embeddings_pre,
                                 const EmbeddingProvider* embeddings_post, const AttackSpec& spec);

}  // namespace jguard
