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

#include <algorithm>
#include <set>

#include "jguard/corpus.hpp"
#include "jguard/error.hpp"
#include "temp_dir.hpp"

using namespace jguard;
using jguard::testing::TempDir;
using jguard::testing::read_file;
using jguard::testing::write_file;

namespace {

Corpus numbered(std::size_t n) {
  Corpus c;
  c.name = "numbered";
  for (std::size_t k = 0; k < n; ++k) {
    c.articles.push_back({"id" + std::to_string(k), "Text " + std::to_string(k) + ".",
                          static_cast<int>(k % 2), std::nullopt});
  }
  return c;
}

std::set<std::string> ids(const Corpus& c) {
  std::set<std::string> out;
  for (const auto& a : c.articles) out.insert(a.id);
  return out;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("three valid lines load in file order") {
  TempDir dir;
  write_file(dir / "c.jsonl",
             "{\"id\":\"x\",\"text\":\"One.\",\"label\":0}\n"
             "{\"id\":\"y\",\"text\":\"Two.\",\"label\":1,\"generator\":\"gpt3\"}\n"
             "\n"
             "{\"id\":\"z\",\"text\":\"\",\"label\":0}\n");
  const Corpus c = load_corpus(dir / "c.jsonl");
  CHECK(c.name == "c");
  REQUIRE(c.size() == 3);
  CHECK(c.articles[0].id == "x");
  CHECK(c.articles[1].id == "y");
  CHECK(c.articles[1].generator == std::optional<std::string>("gpt3"));
  CHECK(c.articles[2].id == "z");
  CHECK(c.articles[2].text.empty());
}

TEST_CASE("field mapping without generator") {
  const Corpus c = parse_corpus(R"({"id":"a1","text":"Hi.","label":1})", "t");
  REQUIRE(c.size() == 1);
  CHECK(c.articles[0].id == "a1");
  CHECK(c.articles[0].text == "Hi.");
  CHECK(c.articles[0].label == 1);
  CHECK_FALSE(c.articles[0].generator.has_value());
}

TEST_CASE("duplicate ids are rejected") {
  const std::string content =
      "{\"id\":\"a1\",\"text\":\"A.\",\"label\":0}\n{\"id\":\"a1\",\"text\":\"B.\",\"label\":1}\n";
  CHECK_THROWS_AS(parse_corpus(content, "t"), DuplicateId);
}

TEST_CASE("malformed records report their line") {
  const std::string bad_json = "{\"id\":\"a\",\"text\":\"A.\",\"label\":0}\n{oops\n";
  try {
    parse_corpus(bad_json, "t");
    FAIL("expected MalformedRecord");
  } catch (const MalformedRecord& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_corpus(R"({"id":"a","label":0})", "t"), MalformedRecord);
  CHECK_THROWS_AS(parse_corpus(R"({"id":"a","text":"x","label":2})", "t"), MalformedRecord);
  CHECK_THROWS_AS(parse_corpus(R"({"id":"","text":"x","label":0})", "t"), MalformedRecord);
  CHECK_THROWS_AS(parse_corpus(R"({"id":"a","text":"x","label":"1"})", "t"), MalformedRecord);
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.jsonl"), DataError);
}

TEST_CASE("split sizes follow the floor rule") {
  const auto s10 = split_corpus(numbered(10), {7, 2, 1, 42});
  CHECK(s10.train.size() == 7);
  CHECK(s10.test.size() == 2);
  CHECK(s10.val.size() == 1);

  const auto s11 = split_corpus(numbered(11), {7, 2, 1, 42});
  CHECK(s11.train.size() == 8);
  CHECK(s11.test.size() == 2);
  CHECK(s11.val.size() == 1);

  CHECK_THROWS_AS(split_corpus(Corpus{}, SplitSpec{}), UsageError);
}

TEST_CASE("split sizes match the floor formula for many n") {
  for (std::size_t n = 1; n <= 60; ++n) {
    const auto s = split_corpus(numbered(n), {7, 2, 1, 5});
    const std::size_t test = n * 2 / 10, val = n * 1 / 10;
    CHECK(s.test.size() == test);
    CHECK(s.val.size() == val);
    CHECK(s.train.size() == n - test - val);
  }
}

TEST_CASE("split is a deterministic partition") {
  const Corpus c = numbered(150);
  const auto a = split_corpus(c, {7, 2, 1, 9});
  const auto b = split_corpus(c, {7, 2, 1, 9});
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  CHECK(a.val == b.val);

  std::set<std::string> all;
  for (const Corpus* part : {&a.train, &a.test, &a.val}) {
    for (const auto& id : ids(*part)) CHECK(all.insert(id).second);
  }
  CHECK(all == ids(c));

  const auto other = split_corpus(c, {7, 2, 1, 10});
  CHECK(other.train.articles != a.train.articles);
}

TEST_CASE("write then load round-trips") {
  TempDir dir;
  Corpus c;
  c.name = "round";
  c.articles = {{"p1", "First paragraph.\nSecond \"quoted\" paragraph.", 0, std::nullopt},
                {"p2", "Unicode caf\xc3\xa9 and tab\tend.", 1, std::string("gpt2")},
                {"p3", "", 0, std::nullopt}};
  write_corpus(c, dir / "round.jsonl");
  const std::string bytes = read_file(dir / "round.jsonl");
  CHECK(bytes.find("First paragraph.\\nSecond \\\"quoted\\\" paragraph.") != std::string::npos);
  CHECK(load_corpus(dir / "round.jsonl") == c);
  CHECK(std::count(bytes.begin(), bytes.end(), '\n') == 3);
}

TEST_CASE("empty corpus writes an empty file") {
  TempDir dir;
  Corpus empty;
  empty.name = "empty";
  write_corpus(empty, dir / "empty.jsonl");
  CHECK(read_file(dir / "empty.jsonl").empty());
  CHECK(load_corpus(dir / "empty.jsonl") == empty);
}

TEST_CASE("paraphrase files and split ratios parse") {
  TempDir dir;
  write_file(dir / "p.jsonl", "{\"id\":\"a\",\"text\":\"New a.\"}\n{\"id\":\"b\",\"text\":\"New b.\"}\n");
  const auto p = load_paraphrases(dir / "p.jsonl");
  REQUIRE(p.size() == 2);
  CHECK(p[1].id == "b");
  CHECK(p[1].text == "New b.");

  const SplitSpec s = parse_split_ratios("8:1:1", 3);
  CHECK(s.train_parts == 8);
  CHECK(s.test_parts == 1);
  CHECK(s.val_parts == 1);
  CHECK(s.seed == 3);
  CHECK_THROWS_AS(parse_split_ratios("7:2", 0), UsageError);
  CHECK_THROWS_AS(parse_split_ratios("7:0:1", 0), UsageError);
  CHECK_THROWS_AS(parse_split_ratios("a:b:c", 0), UsageError);
}

}
