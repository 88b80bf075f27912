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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace jguard {

/// A labeled news document. Paragraphs inside `text` are newline-separated.
struct Article {
  std::string id;
  std::string text;
  int label = 0;  // 0 = human, 1 = AI
  std::optional<std::string> generator;

  friend bool operator==(const Article&, const Article&) = default;
};

struct Corpus {
  std::string name;
  std::vector<Article> articles;

  std::size_t size() const { return articles.size(); }
  bool empty() const { return articles.empty(); }
  friend bool operator==(const Corpus&, const Corpus&) = default;
};

/// Split proportions as integer parts (7:2:1 by default) plus the shuffle seed.
struct SplitSpec {
  std::uint32_t train_parts = 7;
  std::uint32_t test_parts = 2;
  std::uint32_t val_parts = 1;
  std::uint64_t seed = 0;
};

struct CorpusSplit {
  Corpus train;
  Corpus test;
  Corpus val;
};

/// Replacement text for one article, as read from a paraphrase file.
struct Paraphrase {
  std::string id;
  std::string text;
};

/// Reads a JSON-lines corpus. Blank lines are skipped; line numbers in errors
/// are 1-based. The corpus name is the file stem.
Corpus load_corpus(const std::filesystem::path& path);

/// Parses JSON-lines corpus content already held in memory.
Corpus parse_corpus(const std::string& content, std::string name);

void write_corpus(const Corpus& corpus, const std::filesystem::path& path);
std::string serialize_corpus(const Corpus& corpus);

/// Throws DuplicateId on the first repeated id.
void validate_unique_ids(const Corpus& corpus);

/// Seeded shuffle followed by a floor-rule partition.
///
/// test and val receive floor(n * parts / total) articles each; train takes
/// everything left over. The permutation is a Fisher-Yates pass driven by
/// std::mt19937_64(seed) with rejection-sampled indices (see Rng), so a
/// given (corpus, seed) splits identically on every platform.
CorpusSplit split_corpus(const Corpus& corpus, const SplitSpec& spec);

/// Reads a JSON-lines file of {"id","text"} records.
std::vector<Paraphrase> load_paraphrases(const std::filesystem::path& path);

/// Parses "7:2:1" style ratios.
SplitSpec parse_split_ratios(const std::string& ratios, std::uint64_t seed);

}  // namespace jguard
