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
#include <vector>

#include "jguard/error.hpp"
#include "jguard/eval.hpp"
#include "jguard/jfeatures.hpp"
#include "jguard/random.hpp"
#include "oracles.hpp"

using namespace jguard;

TEST_SUITE("eval") {

TEST_CASE("AUROC examples") {
  CHECK(auroc(std::vector<double>{0.1, 0.4, 0.35, 0.8}, std::vector<int>{0, 0, 1, 1}) == 0.75);
  CHECK(auroc(std::vector<double>{0.1, 0.2, 0.8, 0.9}, std::vector<int>{0, 0, 1, 1}) == 1.0);
  CHECK(auroc(std::vector<double>{0.5, 0.5, 0.5, 0.5}, std::vector<int>{0, 1, 0, 1}) == 0.5);
  CHECK(auroc(std::vector<double>{0.9, 0.8, 0.2, 0.1}, std::vector<int>{0, 0, 1, 1}) == 0.0);
}

TEST_CASE("AUROC matches pairwise counting") {
  Rng rng(1234);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + rng.uniform_index(60);
    std::vector<double> s(n);
    std::vector<int> y(n);
    const bool coarse = t % 3 == 0;  // many ties
    for (std::size_t k = 0; k < n; ++k) {
      s[k] = coarse ? static_cast<double>(rng.uniform_index(4)) : rng.normal();
      y[k] = rng.bernoulli(0.5) ? 1 : 0;
    }
    y[0] = 0;
    y[1] = 1;
    worst = std::max(worst, std::abs(auroc(s, y) - testing::brute_force_auroc(s, y)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("AUROC is invariant to increasing transforms") {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> s(40), g(40);
    std::vector<int> y(40);
    for (int k = 0; k < 40; ++k) {
      s[k] = rng.normal();
      g[k] = std::exp(3.0 * s[k]) + 7.0;
      y[k] = k % 2;
    }
    CHECK(auroc(s, y) == auroc(g, y));
  }
}

TEST_CASE("flipping labels complements AUROC") {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> s(30);
    std::vector<int> y(30), flipped(30);
    for (int k = 0; k < 30; ++k) {
      s[k] = static_cast<double>(rng.uniform_index(10));
      y[k] = rng.bernoulli(0.4) ? 1 : 0;
    }
    y[0] = 0;
    y[1] = 1;
    for (int k = 0; k < 30; ++k) flipped[k] = 1 - y[k];
    CHECK(std::abs(auroc(s, y) + auroc(s, flipped) - 1.0) < 1e-12);
  }
}

TEST_CASE("AUROC rejects bad input") {
  CHECK_THROWS_AS(auroc(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1}), UsageError);
  CHECK_THROWS_AS(auroc(std::vector<double>{0.1}, std::vector<int>{0, 1}), UsageError);
  CHECK_THROWS_AS(auroc(std::vector<double>{0.1, std::nan("")}, std::vector<int>{0, 1}), NumericError);
}

TEST_CASE("permutation importance") {
  Rng rng(3);
  const int n = 200;
  Eigen::MatrixXd x(kNumFeatures, n);
  std::vector<int> y(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < kNumFeatures; ++i) x(i, k) = rng.uniform01();
    y[k] = x(4, k) > 0.5 ? 1 : 0;
  }
  const FeatureScorer scorer = [](const Eigen::MatrixXd& f) {
    std::vector<double> s(static_cast<std::size_t>(f.cols()));
    for (Eigen::Index k = 0; k < f.cols(); ++k) s[static_cast<std::size_t>(k)] = f(4, k);
    return s;
  };
  const auto imp = permutation_importance(scorer, x, y, 11, 5);
  REQUIRE(imp.size() == static_cast<std::size_t>(kNumFeatures));
  CHECK(imp[0].index == 4);
  CHECK(imp[0].feature == kFeatureNames[4]);
  CHECK(imp[0].mean_drop > 0.3);
  for (std::size_t k = 1; k < imp.size(); ++k) {
    CHECK(imp[k].mean_drop == 0.0);
    if (k > 1) CHECK(imp[k - 1].index < imp[k].index);
  }
  const auto again = permutation_importance(scorer, x, y, 11, 5);
  for (std::size_t k = 0; k < imp.size(); ++k) CHECK(again[k].mean_drop == imp[k].mean_drop);
  CHECK_THROWS_AS(permutation_importance(scorer, x, y, 11, 0), UsageError);
}

TEST_CASE("config digest") {
  const std::string a = config_digest("lr=1", "corpus");
  CHECK(a.size() == 16);
  CHECK(a.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(a == config_digest("lr=1", "corpus"));
  CHECK(a != config_digest("lr=2", "corpus"));
  CHECK(a != config_digest("lr=1", "other"));
}

}
