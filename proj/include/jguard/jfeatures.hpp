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
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "jguard/segment.hpp"

namespace jguard {

inline constexpr int kNumFeatures = 13;

/// Canonical feature order. Indices into FeatureVector::values.
enum class Feature : int {
  kMeanWordCountSent = 0,
  kMeanSentCountPara,
  kWcLeadSent,
  kWcLeadPara,
  kPassiveVoiceCount,
  kPastTenseCount,
  kExclPerPara,
  kHashPerPara,
  kAposPerPara,
  kOxfordCommaPerPara,
  kDateViolations,
  kTimeViolations,
  kNumberViolations,
};

inline constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "mean_word_count_sent", "mean_sent_count_para",  "wc_lead_sent",
    "wc_lead_para",         "passive_voice_count",   "past_tense_count",
    "excl_per_para",        "hash_per_para",         "apos_per_para",
    "oxford_comma_per_para", "date_violations",      "time_violations",
    "number_violations"};

template <typename Scalar>
using FeatureArray = Eigen::Matrix<Scalar, kNumFeatures, 1>;

struct FeatureVector {
  FeatureArray<double> values = FeatureArray<double>::Zero();
  bool normalized = false;

  double operator[](Feature f) const { return values[static_cast<int>(f)]; }
  double& operator[](Feature f) { return values[static_cast<int>(f)]; }
};

/// Features 1-6: sentence/paragraph shape, lead sizes, voice and tense.
/// Words are tokens containing at least one ASCII letter; wc_lead_para counts
/// every token of the first paragraph, punctuation included.
void extract_organization_features(const SegmentedArticle& seg, FeatureVector& out);

/// Features 7-10: per-paragraph means of '!', '#', '\'' and ", and"/", or".
void extract_punctuation_features(const SegmentedArticle& seg, FeatureVector& out);

/// Features 11-13: absolute AP date/time/number violation counts, summed over
/// paragraphs so that no phrase spans a paragraph break.
void extract_format_features(const SegmentedArticle& seg, FeatureVector& out);

/// Occurrences of a comma, whitespace, then "and" or "or" as a whole word.
std::size_t count_oxford_commas(std::string_view text);

FeatureVector extract_raw_features(const SegmentedArticle& seg);

/// L2 normalization. Zero maps to zero; non-finite entries throw NumericError.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, 1> l2_normalized(
    const Eigen::MatrixBase<Derived>& v) {
  const auto norm = v.norm();
  if (norm == typename Derived::Scalar(0)) return v;
  return v / norm;
}

/// Divides by the Euclidean norm; the zero vector stays zero. Input already
/// flagged normalized is returned as is. Throws NumericError on non-finite
/// values.
FeatureVector normalize_features(const FeatureVector& raw);

/// fold -> segment -> 13 features -> L2 normalize.
FeatureVector extract_journalism_vector(std::string_view article_text);
FeatureVector extract_raw_journalism_vector(std::string_view article_text);

/// Batch extraction in input order.
std::vector<FeatureVector> extract_batch(const std::vector<std::string_view>& texts,
                                         bool normalized = true);

}  // namespace jguard
