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

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jguard/cli.hpp"
#include "jguard/corpus.hpp"
#include "jguard/embedding.hpp"
#include "jguard/report.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

using namespace jguard;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result jg(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string p(const std::filesystem::path& path) { return path.string(); }

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

void write_synthetic(const std::filesystem::path& path, std::size_t per_class, std::uint64_t seed) {
  testing::SyntheticOptions o;
  o.per_class = per_class;
  o.seed = seed;
  write_corpus(testing::synthetic_corpus(o), path);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("extract writes one row per article") {
  testing::TempDir dir;
  testing::write_file(dir / "c.jsonl",
                      "{\"id\":\"x1\",\"text\":\"One, two, and three.\",\"label\":0}\n"
                      "{\"id\":\"x2\",\"text\":\"Stop! Go!\",\"label\":1}\n"
                      "{\"id\":\"x3\",\"text\":\"\",\"label\":0}\n");
  const Result r = jg({"extract", "--in", p(dir / "c.jsonl"), "--out", p(dir / "f.csv")});
  REQUIRE(r.code == 0);
  const std::string csv = testing::read_file(dir / "f.csv");
  CHECK(count_lines(csv) == 4);
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    CHECK(std::count(line.begin(), line.end(), ',') == 14);
  }
  CHECK(csv.rfind("id,label,mean_word_count_sent", 0) == 0);
}

TEST_CASE("split, train and evaluate") {
  testing::TempDir dir;
  write_synthetic(dir / "corpus.jsonl", 80, 3);
  REQUIRE(jg({"--seed", "5", "split", "--in", p(dir / "corpus.jsonl"), "--out-dir", p(dir.path())}).code == 0);
  CHECK(load_corpus(dir / "train.jsonl").size() == 112);
  CHECK(load_corpus(dir / "test.jsonl").size() == 32);
  CHECK(load_corpus(dir / "val.jsonl").size() == 16);

  REQUIRE(jg({"train-lr", "--train", p(dir / "train.jsonl"), "--out", p(dir / "lr.json")}).code == 0);
  REQUIRE(jg({"eval", "--model", p(dir / "lr.json"), "--test", p(dir / "test.jsonl"), "--out",
              p(dir / "eval.json")}).code == 0);
  const ReportSet rep = load_report(dir / "eval.json");
  REQUIRE(rep.evaluations.size() == 1);
  CHECK(rep.evaluations[0].auroc >= 0.95);
  CHECK(rep.evaluations[0].detector == "LR+JF");
  CHECK(rep.evaluations[0].generator == "synthlm");
  CHECK(rep.evaluations[0].n_test == 32);
  CHECK(rep.evaluations[0].config_digest.size() == 16);
  CHECK(std::filesystem::exists(dir / "eval.txt"));

  REQUIRE(jg({"robustness", "--model", p(dir / "lr.json"), "--test", p(dir / "test.jsonl"), "--out",
              p(dir / "rob.json")}).code == 0);
  CHECK(load_report(dir / "rob.json").robustness.at(0).delta == 0.0);

  REQUIRE(jg({"report", "--in", p(dir / "eval.json"), p(dir / "rob.json"), "--out", p(dir / "all.json")}).code == 0);
  const ReportSet all = load_report(dir / "all.json");
  CHECK(all.evaluations.size() == 1);
  CHECK(all.robustness.size() == 1);

  REQUIRE(jg({"importance", "--model", p(dir / "lr.json"), "--test", p(dir / "test.jsonl"), "--out",
              p(dir / "imp.json"), "--repeats", "3"}).code == 0);
  CHECK(nlohmann::json::parse(testing::read_file(dir / "imp.json")).size() == 13);
}

TEST_CASE("fusion commands with pseudo-embeddings") {
  testing::TempDir dir;
  write_synthetic(dir / "train.jsonl", 30, 1);
  write_synthetic(dir / "val.jsonl", 10, 2);
  const Result t = jg({"train-fusion", "--train", p(dir / "train.jsonl"), "--val", p(dir / "val.jsonl"),
                       "--out", p(dir / "f.json"), "--pseudo-embeddings", "--dim", "4", "--epochs", "2",
                       "--hidden", "32"});
  REQUIRE(t.code == 0);
  CHECK(t.out.find("epoch 1 loss") != std::string::npos);
  CHECK(t.out.find("best_epoch") != std::string::npos);
  const Result e = jg({"eval", "--model", p(dir / "f.json"), "--test", p(dir / "val.jsonl"), "--out",
                       p(dir / "e.json"), "--pseudo-embeddings", "--dim", "4"});
  REQUIRE(e.code == 0);
  CHECK(load_report(dir / "e.json").evaluations[0].detector == "Fusion");
  CHECK(jg({"robustness", "--model", p(dir / "f.json"), "--test", p(dir / "val.jsonl"), "--out",
            p(dir / "r.json"), "--pseudo-embeddings", "--dim", "4"}).code == 0);
  CHECK(jg({"eval", "--model", p(dir / "f.json"), "--test", p(dir / "val.jsonl"), "--out",
            p(dir / "e2.json")}).code == 2);
}

TEST_CASE("attacked corpora extract identically") {
  testing::TempDir dir;
  write_synthetic(dir / "c.jsonl", 20, 4);
  REQUIRE(jg({"attack", "--in", p(dir / "c.jsonl"), "--out", p(dir / "a.jsonl"), "--kind", "cyrillic"}).code == 0);
  CHECK(testing::read_file(dir / "a.jsonl") != testing::read_file(dir / "c.jsonl"));
  REQUIRE(jg({"extract", "--in", p(dir / "c.jsonl"), "--out", p(dir / "c.csv")}).code == 0);
  REQUIRE(jg({"extract", "--in", p(dir / "a.jsonl"), "--out", p(dir / "a.csv")}).code == 0);
  CHECK(testing::read_file(dir / "c.csv") == testing::read_file(dir / "a.csv"));
}

TEST_CASE("exit codes") {
  testing::TempDir dir;
  CHECK(jg({}).code == 2);
  CHECK(jg({"frobnicate"}).code == 2);
  CHECK(jg({"extract", "--in", p(dir / "x.jsonl")}).code == 2);
  const Result missing = jg({"extract", "--in", p(dir / "none.jsonl"), "--out", p(dir / "f.csv")});
  CHECK(missing.code == 3);
  CHECK(missing.err.rfind("error:", 0) == 0);
  CHECK(count_lines(missing.err) == 1);
  testing::write_file(dir / "bad.jsonl", "{\"id\":\"a\",\"text\":1}\n");
  CHECK(jg({"extract", "--in", p(dir / "bad.jsonl"), "--out", p(dir / "f.csv")}).code == 3);
  write_synthetic(dir / "c.jsonl", 5, 1);
  CHECK(jg({"split", "--in", p(dir / "c.jsonl"), "--out-dir", p(dir.path()), "--ratios", "7:0:1"}).code == 2);
  CHECK(jg({"attack", "--in", p(dir / "c.jsonl"), "--out", p(dir / "a.jsonl"), "--kind", "paraphrase"}).code == 2);

  testing::write_file(dir / "bad.bin", [] {
    std::string b = "JGEMB1";
    for (std::uint32_t v : {1u, 1u}) for (int k = 0; k < 4; ++k) b += static_cast<char>((v >> (8 * k)) & 0xFF);
    b += std::string("\x01\x00h0", 3);
    b += std::string("\x00\x00\x80\x7f", 4);  // +inf
    return b;
  }());
  CHECK(jg({"train-fusion", "--train", p(dir / "c.jsonl"), "--val", p(dir / "c.jsonl"), "--out",
            p(dir / "f.json"), "--embeddings", p(dir / "bad.bin")}).code == 4);
  const Result help = jg({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("extract") != std::string::npos);
}

TEST_CASE("reruns are byte-identical") {
  std::string first;
  for (int run = 0; run < 2; ++run) {
    testing::TempDir dir;
    write_synthetic(dir / "corpus.jsonl", 40, 9);
    REQUIRE(jg({"--seed", "3", "split", "--in", p(dir / "corpus.jsonl"), "--out-dir", p(dir.path())}).code == 0);
    REQUIRE(jg({"train-lr", "--train", p(dir / "train.jsonl"), "--out", p(dir / "m.json"), "--batch-size", "16"}).code == 0);
    REQUIRE(jg({"eval", "--model", p(dir / "m.json"), "--test", p(dir / "test.jsonl"), "--out", p(dir / "r.json")}).code == 0);
    const std::string bytes = testing::read_file(dir / "m.json") + testing::read_file(dir / "r.json") +
                              testing::read_file(dir / "r.txt");
    if (run == 0) first = bytes;
    else CHECK(bytes == first);
  }
}

}
