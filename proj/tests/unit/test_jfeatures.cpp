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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "jguard/attack.hpp"
#include "jguard/error.hpp"
#include "jguard/jfeatures.hpp"
#include "jguard/random.hpp"
#include "synthetic.hpp"

using namespace jguard;
using F = Feature;

namespace {

FeatureVector raw(std::string_view text) { return extract_raw_journalism_vector(text); }

double norm_of(const FeatureVector& v) {
  double s = 0.0;
  for (int k = 0; k < kNumFeatures; ++k) s += v.values[k] * v.values[k];
  return std::sqrt(s);
}

}  // namespace

TEST_SUITE("jfeatures") {

TEST_CASE("organization features by hand") {
  const FeatureVector f = raw("The cat sat.\nDogs bark loudly today.");
  CHECK(f[F::kMeanWordCountSent] == 3.5);
  CHECK(f[F::kMeanSentCountPara] == 1.0);
  CHECK(f[F::kWcLeadSent] == 3.0);
  CHECK(f[F::kWcLeadPara] == 4.0);
  CHECK_FALSE(f.normalized);

  const FeatureVector p = raw("The ball was thrown by John.");
  CHECK(p[F::kPassiveVoiceCount] == 1.0);
  CHECK(p[F::kPastTenseCount] == 1.0);

  const FeatureVector two = raw("She walked home. It rained.\nThey walk.");
  CHECK(two[F::kMeanSentCountPara] == 1.5);
  CHECK(two[F::kPastTenseCount] == 1.0);
}

TEST_CASE("empty article gives zeros") {
  const FeatureVector f = raw("");
  for (int k = 0; k < kNumFeatures; ++k) CHECK(f.values[k] == 0.0);
  const FeatureVector n = extract_journalism_vector("");
  CHECK(n.normalized);
  CHECK(n.values.isZero(0.0));
}

TEST_CASE("punctuation features by hand") {
  CHECK(raw("We bought bread, butter, and jam.")[F::kOxfordCommaPerPara] == 1.0);
  const FeatureVector f = raw("Stop! Look! #news");
  CHECK(f[F::kExclPerPara] == 2.0);
  CHECK(f[F::kHashPerPara] == 1.0);
  CHECK(raw("red and blue")[F::kOxfordCommaPerPara] == 0.0);
  CHECK(raw("It's Tom's.\nNone here.")[F::kAposPerPara] == 1.0);
  CHECK(count_oxford_commas("tea, milk, or juice; bread, and, yes, ANDY") == 2);
  CHECK(count_oxford_commas("salt,and pepper") == 0);
  CHECK(count_oxford_commas("red, android") == 0);
}

TEST_CASE("format features are article totals") {
  const FeatureVector f = raw("It opened January 5 at 8 PM.\nThey sold 3 cars on September 9.");
  CHECK(f[F::kDateViolations] == 2.0);
  CHECK(f[F::kTimeViolations] == 1.0);
  CHECK(f[F::kNumberViolations] == 1.0);
}

TEST_CASE("normalization") {
  FeatureVector v;
  v.values[0] = 3.0;
  v.values[1] = 4.0;
  const FeatureVector n = normalize_features(v);
  CHECK(n.normalized);
  CHECK(n.values[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(n.values[1] == doctest::Approx(0.8).epsilon(1e-15));
  for (int k = 2; k < kNumFeatures; ++k) CHECK(n.values[k] == 0.0);

  const FeatureVector z = normalize_features(FeatureVector{});
  CHECK(z.normalized);
  CHECK(z.values.isZero(0.0));

  CHECK(normalize_features(n).values == n.values);

  FeatureVector bad;
  bad.values[4] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(normalize_features(bad), NumericError);
  bad.values[4] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(normalize_features(bad), NumericError);
}

TEST_CASE("unit norm on random nonzero inputs") {
  Rng rng(101);
  for (int k = 0; k < 1000; ++k) {
    FeatureVector v;
    for (int i = 0; i < kNumFeatures; ++i) v.values[i] = rng.bernoulli(0.3) ? 0.0 : rng.uniform(0.0, 50.0);
    v.values[static_cast<int>(rng.uniform_index(kNumFeatures))] += 1e-3;
    CHECK(std::abs(norm_of(normalize_features(v)) - 1.0) <= 1e-9);
  }
}

TEST_CASE("extracted vectors are unit norm") {
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const FeatureVector v = extract_journalism_vector(jguard::testing::synthetic_article(rng, 0.5));
    CHECK(v.normalized);
    CHECK(std::abs(norm_of(v) - 1.0) <= 1e-9);
  }
}

TEST_CASE("doubling an article scales counts and keeps means") {
  Rng rng(77);
  for (int k = 0; k < 40; ++k) {
    const std::string text = jguard::testing::synthetic_article(rng, k % 2 ? 0.9 : 0.1);
    const FeatureVector once = raw(text);
    const FeatureVector twice = raw(text + "\n" + text);
    for (F f : {F::kMeanWordCountSent, F::kMeanSentCountPara, F::kWcLeadSent, F::kWcLeadPara,
                F::kPassiveVoiceCount, F::kPastTenseCount, F::kExclPerPara, F::kHashPerPara,
                F::kAposPerPara, F::kOxfordCommaPerPara}) {
      CHECK(twice[f] == once[f]);
    }
    for (F f : {F::kDateViolations, F::kTimeViolations, F::kNumberViolations}) {
      CHECK(twice[f] == 2.0 * once[f]);
    }
  }
}

TEST_CASE("Cyrillic injection leaves the vector unchanged") {
  Rng rng(13);
  for (int k = 0; k < 200; ++k) {
    const std::string t = k % 2 ? jguard::testing::random_article(rng)
                                : jguard::testing::synthetic_article(rng, 0.5);
    const FeatureVector a = extract_journalism_vector(t);
    const FeatureVector b = extract_journalism_vector(cyrillic_inject(t));
    CHECK(a.values == b.values);
  }
}

TEST_CASE("lead and Oxford comma means separate on constructed corpora") {
  jguard::testing::SyntheticOptions opts;
  opts.per_class = 60;
  const Corpus c = jguard::testing::synthetic_corpus(opts);
  double lead[2] = {0, 0}, oxford[2] = {0, 0};
  for (const auto& a : c.articles) {
    const FeatureVector f = raw(a.text);
    lead[a.label] += f[F::kWcLeadPara];
    oxford[a.label] += f[F::kOxfordCommaPerPara];
  }
  CHECK(lead[1] > lead[0]);
  CHECK(oxford[1] > oxford[0]);
}

TEST_CASE("batch extraction keeps input order") {
  const std::vector<std::string_view> texts = {"One sentence here.", "", "Stop! Go!"};
  const auto batch = extract_batch(texts);
  REQUIRE(batch.size() == 3);
  for (std::size_t k = 0; k < texts.size(); ++k) {
    CHECK(batch[k].values == extract_journalism_vector(texts[k]).values);
  }
  const auto raw_batch = extract_batch(texts, false);
  CHECK_FALSE(raw_batch[2].normalized);
  CHECK(raw_batch[2][F::kExclPerPara] == 2.0);
}

}
