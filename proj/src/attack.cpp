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

#include "jguard/attack.hpp"

#include <algorithm>
#include <unordered_map>

#include "jguard/error.hpp"
#include "jguard/eval.hpp"
#include "jguard/utf8.hpp"

namespace jguard {

const VowelMap& default_vowel_map() {
  static const VowelMap map = {{'a', U'а'}, {'e', U'е'}, {'o', U'о'}};
  return map;
}

std::string_view to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::kIdentity: return "identity";
    case AttackKind::kCyrillic: return "cyrillic";
    case AttackKind::kParaphraseFile: return "paraphrase";
  }
  return "identity";
}

void AttackSpec::validate() const {
  if (kind == AttackKind::kParaphraseFile && !paraphrase_path) {
    throw UsageError("paraphrase attack requires a paraphrase file");
  }
  for (const auto& [from, to] : vowel_map) {
    if (static_cast<unsigned char>(from) >= 0x80) throw UsageError("vowel map keys must be ASCII");
    if (to > 0x10FFFF || (to >= 0xD800 && to <= 0xDFFF)) throw UsageError("invalid replacement code point");
  }
}

std::string cyrillic_inject(std::string_view text, const VowelMap& map) {
  std::string out;
  out.reserve(text.size() + text.size() / 2);
  for (char c : text) {
    auto it = std::find_if(map.begin(), map.end(), [c](const auto& e) { return e.first == c; });
    if (it == map.end()) {
      out += c;
    } else {
      utf8::append(out, it->second);
    }
  }
  return out;
}

Corpus apply_paraphrase(const Corpus& corpus, const std::vector<Paraphrase>& paraphrases) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < corpus.size(); ++k) index.emplace(corpus.articles[k].id, k);
  Corpus out = corpus;
  for (const Paraphrase& p : paraphrases) {
    auto it = index.find(p.id);
    if (it == index.end()) throw DataError("paraphrase id '" + p.id + "' is not in the corpus");
    out.articles[it->second].text = p.text;
  }
  return out;
}

Corpus apply_paraphrase(const Corpus& corpus, const std::filesystem::path& paraphrase_path) {
  return apply_paraphrase(corpus, load_paraphrases(paraphrase_path));
}

Corpus apply_attack(const Corpus& corpus, const AttackSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case AttackKind::kIdentity:
      return corpus;
    case AttackKind::kCyrillic: {
      Corpus out = corpus;
      for (Article& a : out.articles) a.text = cyrillic_inject(a.text, spec.vowel_map);
      return out;
    }
    case AttackKind::kParaphraseFile:
      return apply_paraphrase(corpus, *spec.paraphrase_path);
  }
  return corpus;
}

RobustnessReport make_robustness_report(std::string detector, std::string generator,
                                        std::string attack, double auroc_pre, double auroc_post) {
  return {std::move(detector), std::move(generator), std::move(attack), auroc_pre, auroc_post,
          auroc_pre - auroc_post};
}

RobustnessReport robustness_eval(const Detector& detector, const Corpus& test,
                                 const EmbeddingProvider* embeddings_pre,
                                 const EmbeddingProvider* embeddings_post, const AttackSpec& spec) {
  if (test.empty()) throw UsageError("robustness evaluation needs a nonempty test corpus");
  if (detector.needs_embeddings() && (!embeddings_pre || !embeddings_post)) {
    throw UsageError("fusion detectors need pre- and post-attack embeddings");
  }
  const std::vector<int> labels = labels_of(test);
  const Corpus attacked = apply_attack(test, spec);

  const double pre = auroc(score_corpus(detector, test, embeddings_pre), labels);
  const double post = auroc(score_corpus(detector, attacked, embeddings_post), labels);
  return make_robustness_report(detector.name, generator_tag(test), std::string(to_string(spec.kind)),
                                pre, post);
}

}  // namespace jguard
