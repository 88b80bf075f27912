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

#include <cstring>
#include <limits>
#include <string>

#include "jguard/embedding.hpp"
#include "jguard/error.hpp"
#include "jguard/fusion.hpp"
#include "jguard/random.hpp"
#include "temp_dir.hpp"

using namespace jguard;

namespace {

EmbeddingTable sample_table(int dim, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<EmbeddingRecord> records;
  for (int k = 0; k < count; ++k) {
    Eigen::VectorXf v(dim);
    for (int i = 0; i < dim; ++i) v[i] = static_cast<float>(rng.normal());
    records.push_back({"id-" + std::to_string(k), v});
  }
  return EmbeddingTable(dim, std::move(records));
}

void put_u32(std::string& s, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) s += static_cast<char>((v >> (8 * k)) & 0xFF);
}

}  // namespace

TEST_SUITE("embedding") {

TEST_CASE("byte layout") {
  Eigen::VectorXf v(2);
  v << 1.0f, -2.5f;
  const std::string bytes = serialize_embeddings(EmbeddingTable(2, {{"ab", v}}));
  std::string expected = "JGEMB1";
  put_u32(expected, 1);
  put_u32(expected, 2);
  expected += '\x02';
  expected += '\x00';
  expected += "ab";
  put_u32(expected, 0x3F800000u);
  put_u32(expected, 0xC0200000u);
  CHECK(bytes == expected);
}

TEST_CASE("round trip is exact") {
  const EmbeddingTable t = sample_table(17, 25, 4);
  const EmbeddingTable back = parse_embeddings(serialize_embeddings(t));
  REQUIRE(back.size() == t.size());
  CHECK(back.dim() == 17);
  for (std::size_t k = 0; k < t.size(); ++k) {
    CHECK(back.records()[k].id == t.records()[k].id);
    CHECK(std::memcmp(back.records()[k].vector.data(), t.records()[k].vector.data(), 17 * 4) == 0);
  }
  testing::TempDir dir;
  write_embeddings(t, dir / "e.bin");
  CHECK(serialize_embeddings(read_embeddings(dir / "e.bin")) == serialize_embeddings(t));
}

TEST_CASE("malformed files are rejected") {
  const std::string good = serialize_embeddings(sample_table(4, 3, 1));
  std::string bad_magic = good;
  bad_magic[5] = '2';
  CHECK_THROWS_AS(parse_embeddings(bad_magic), DataError);
  for (std::size_t cut : {std::size_t{3}, std::size_t{10}, good.size() - 1}) {
    CHECK_THROWS_AS(parse_embeddings(good.substr(0, cut)), DataError);
  }
  CHECK_THROWS_AS(parse_embeddings(good + "x"), DataError);
  std::string zero_dim = "JGEMB1";
  put_u32(zero_dim, 0);
  put_u32(zero_dim, 0);
  CHECK_THROWS_AS(parse_embeddings(zero_dim), DataError);
  CHECK_THROWS_AS(read_embeddings("/nonexistent/e.bin"), DataError);
}

TEST_CASE("table invariants") {
  Eigen::VectorXf v = Eigen::VectorXf::Ones(3);
  CHECK_THROWS_AS(EmbeddingTable(3, {{"a", v}, {"a", v}}), DuplicateId);
  CHECK_THROWS_AS(EmbeddingTable(4, {{"a", v}}), DataError);
  v[1] = std::numeric_limits<float>::infinity();
  CHECK_THROWS_AS(EmbeddingTable(3, {{"a", v}}), NumericError);
  const EmbeddingTable t = sample_table(3, 2, 2);
  CHECK(t.contains("id-1"));
  CHECK_THROWS_AS(t.at("missing"), DataError);
}

TEST_CASE("providers") {
  const EmbeddingTable t = sample_table(5, 3, 6);
  const EmbeddingProvider table = EmbeddingProvider::from_table(t);
  CHECK(table.dim() == 5);
  CHECK(table.get("id-2") == t.at("id-2").vector.cast<double>());
  CHECK_THROWS_AS(table.get("nope"), DataError);

  Corpus c;
  c.articles = {{"id-1", "x", 0, {}}, {"id-0", "y", 1, {}}};
  const Eigen::MatrixXd m = table.matrix_for(c);
  CHECK(m.cols() == 2);
  CHECK(m.col(0) == t.at("id-1").vector.cast<double>());

  const EmbeddingProvider pseudo = EmbeddingProvider::pseudo(8, 3);
  CHECK(pseudo.dim() == 8);
  CHECK(pseudo.get("any") == pseudo.get("any"));
  CHECK(std::abs(pseudo.get("any").norm() - 1.0) < 1e-12);
  const EmbeddingProvider post = EmbeddingProvider::pseudo(8, 3, "post");
  CHECK_FALSE(post.get("any") == pseudo.get("any"));
}

}
