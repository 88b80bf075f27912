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

#include "jguard/jfeatures.hpp"

#include <algorithm>
#include <cmath>

#include "jguard/ap_style.hpp"
#include "jguard/error.hpp"
#include "text_util.hpp"

namespace jguard {
namespace {

bool is_word(const std::string& token) {
  return std::any_of(token.begin(), token.end(), [](char c) { return text::is_alpha(c); });
}

std::size_t word_count(const Sentence& s) {
  return static_cast<std::size_t>(std::count_if(s.tokens.begin(), s.tokens.end(), is_word));
}

bool has_alpha(const Sentence& s) {
  return std::any_of(s.text.begin(), s.text.end(), [](char c) { return text::is_alpha(c); });
}

template <typename PerParagraph>
double paragraph_mean(const SegmentedArticle& seg, PerParagraph&& count) {
  if (seg.paragraphs.empty()) return 0.0;
  double total = 0.0;
  for (const Paragraph& p : seg.paragraphs) total += static_cast<double>(count(p));
  return total / static_cast<double>(seg.paragraphs.size());
}

}  // namespace

void extract_organization_features(const SegmentedArticle& seg, FeatureVector& out) {
  std::size_t sentences = 0;
  std::size_t words = 0;
  for (const Paragraph& p : seg.paragraphs) {
    for (const Sentence& s : p.sentences) {
      ++sentences;
      words += word_count(s);
    }
  }
  out[Feature::kMeanWordCountSent] =
      sentences == 0 ? 0.0 : static_cast<double>(words) / static_cast<double>(sentences);

  out[Feature::kMeanSentCountPara] = paragraph_mean(seg, [](const Paragraph& p) {
    return std::count_if(p.sentences.begin(), p.sentences.end(), has_alpha);
  });

  out[Feature::kWcLeadSent] = 0.0;
  out[Feature::kWcLeadPara] = 0.0;
  if (!seg.paragraphs.empty()) {
    const Paragraph& lead = seg.paragraphs.front();
    if (!lead.sentences.empty()) {
      out[Feature::kWcLeadSent] = static_cast<double>(word_count(lead.sentences.front()));
    }
    std::size_t tokens = 0;
    for (const Sentence& s : lead.sentences) tokens += s.tokens.size();
    out[Feature::kWcLeadPara] = static_cast<double>(tokens);
  }

  out[Feature::kPassiveVoiceCount] = paragraph_mean(seg, [](const Paragraph& p) {
    return std::count_if(p.sentences.begin(), p.sentences.end(),
                         [](const Sentence& s) { return is_passive(s.tokens, s.tags); });
  });
  out[Feature::kPastTenseCount] = paragraph_mean(seg, [](const Paragraph& p) {
    return std::count_if(p.sentences.begin(), p.sentences.end(),
                         [](const Sentence& s) { return is_past_tense(s.tags); });
  });
}

std::size_t count_oxford_commas(std::string_view s) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != ',') continue;
    std::size_t k = i + 1;
    if (k >= s.size() || !text::is_space(s[k])) continue;
    while (k < s.size() && text::is_space(s[k])) ++k;
    for (std::string_view conj : {std::string_view("and"), std::string_view("or")}) {
      if (s.size() - k < conj.size()) continue;
      if (text::to_lower(s.substr(k, conj.size())) != conj) continue;
      const std::size_t after = k + conj.size();
      if (after == s.size() || !text::is_alnum(s[after])) {
        ++count;
        break;
      }
    }
  }
  return count;
}

void extract_punctuation_features(const SegmentedArticle& seg, FeatureVector& out) {
  auto glyph_mean = [&](char glyph) {
    return paragraph_mean(seg, [glyph](const Paragraph& p) {
      return std::count(p.text.begin(), p.text.end(), glyph);
    });
  };
  out[Feature::kExclPerPara] = glyph_mean('!');
  out[Feature::kHashPerPara] = glyph_mean('#');
  out[Feature::kAposPerPara] = glyph_mean('\'');
  out[Feature::kOxfordCommaPerPara] =
      paragraph_mean(seg, [](const Paragraph& p) { return count_oxford_commas(p.text); });
}

void extract_format_features(const SegmentedArticle& seg, FeatureVector& out) {
  std::size_t dates = 0, times = 0, numbers = 0;
  for (const Paragraph& p : seg.paragraphs) {
    dates += ap::count_date_violations(p.text);
    times += ap::count_time_violations(p.text);
    numbers += ap::count_number_violations(p.text);
  }
  out[Feature::kDateViolations] = static_cast<double>(dates);
  out[Feature::kTimeViolations] = static_cast<double>(times);
  out[Feature::kNumberViolations] = static_cast<double>(numbers);
}

FeatureVector extract_raw_features(const SegmentedArticle& seg) {
  FeatureVector v;
  extract_organization_features(seg, v);
  extract_punctuation_features(seg, v);
  extract_format_features(seg, v);
  return v;
}

FeatureVector normalize_features(const FeatureVector& raw) {
  if (!raw.values.allFinite()) throw NumericError("feature vector has non-finite entries");
  if (raw.normalized) return raw;
  FeatureVector out;
  out.values = l2_normalized(raw.values);
  out.normalized = true;
  return out;
}

FeatureVector extract_raw_journalism_vector(std::string_view article_text) {
  return extract_raw_features(segment(article_text));
}

FeatureVector extract_journalism_vector(std::string_view article_text) {
  return normalize_features(extract_raw_journalism_vector(article_text));
}

std::vector<FeatureVector> extract_batch(const std::vector<std::string_view>& texts,
                                         bool normalized) {
  std::vector<FeatureVector> out;
  out.reserve(texts.size());
  for (std::string_view t : texts) {
    out.push_back(normalized ? extract_journalism_vector(t) : extract_raw_journalism_vector(t));
  }
  return out;
}

}  // namespace jguard
