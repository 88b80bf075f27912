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

#include "jguard/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "jguard/error.hpp"
#include "jguard/random.hpp"

namespace jguard {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r';
  });
}

// Calls fn(line_number, parsed_object) for each nonblank line.
template <typename Fn>
void for_each_record(const std::string& content, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string::npos) end = content.size();
    ++line_no;
    std::string_view line(content.data() + pos, end - pos);
    if (!is_blank(line)) {
      nlohmann::json record;
      try {
        record = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw MalformedRecord(line_no, "invalid JSON");
      }
      if (!record.is_object()) throw MalformedRecord(line_no, "not a JSON object");
      fn(line_no, record);
    }
    if (end == content.size()) break;
    pos = end + 1;
  }
}

std::string required_string(const nlohmann::json& record, const char* field,
                            std::size_t line_no) {
  auto it = record.find(field);
  if (it == record.end()) {
    throw MalformedRecord(line_no, std::string("missing field '") + field + "'");
  }
  if (!it->is_string()) {
    throw MalformedRecord(line_no, std::string("field '") + field + "' is not a string");
  }
  return it->get<std::string>();
}

}  // namespace

Corpus parse_corpus(const std::string& content, std::string name) {
  Corpus corpus;
  corpus.name = std::move(name);
  std::unordered_set<std::string> seen;
  for_each_record(content, [&](std::size_t line_no, const nlohmann::json& record) {
    Article article;
    article.id = required_string(record, "id", line_no);
    if (article.id.empty()) throw MalformedRecord(line_no, "empty id");
    article.text = required_string(record, "text", line_no);

    auto label = record.find("label");
    if (label == record.end()) throw MalformedRecord(line_no, "missing field 'label'");
    if (!label->is_number_integer()) throw MalformedRecord(line_no, "label is not an integer");
    const auto value = label->get<long long>();
    if (value != 0 && value != 1) throw MalformedRecord(line_no, "label must be 0 or 1");
    article.label = static_cast<int>(value);

    if (auto gen = record.find("generator"); gen != record.end() && !gen->is_null()) {
      if (!gen->is_string()) throw MalformedRecord(line_no, "generator is not a string");
      article.generator = gen->get<std::string>();
    }
    if (!seen.insert(article.id).second) throw DuplicateId(article.id);
    corpus.articles.push_back(std::move(article));
  });
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  return parse_corpus(read_file(path), path.stem().string());
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const Article& a : corpus.articles) {
    ordered_json record;
    record["id"] = a.id;
    record["text"] = a.text;
    record["label"] = a.label;
    if (a.generator) record["generator"] = *a.generator;
    out += record.dump();
    out += '\n';
  }
  return out;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  validate_unique_ids(corpus);
  write_file(path, serialize_corpus(corpus));
}

void validate_unique_ids(const Corpus& corpus) {
  std::unordered_set<std::string> seen;
  for (const Article& a : corpus.articles) {
    if (!seen.insert(a.id).second) throw DuplicateId(a.id);
  }
}

CorpusSplit split_corpus(const Corpus& corpus, const SplitSpec& spec) {
  if (corpus.empty()) throw UsageError("cannot split an empty corpus");
  if (spec.train_parts == 0 || spec.test_parts == 0 || spec.val_parts == 0) {
    throw UsageError("split ratios must be positive");
  }
  const std::uint64_t n = corpus.size();
  const std::uint64_t total =
      std::uint64_t{spec.train_parts} + spec.test_parts + spec.val_parts;
  const std::uint64_t n_test = n * spec.test_parts / total;
  const std::uint64_t n_val = n * spec.val_parts / total;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(spec.seed);
  rng.shuffle(order);

  CorpusSplit split;
  split.train.name = corpus.name + ".train";
  split.test.name = corpus.name + ".test";
  split.val.name = corpus.name + ".val";
  const std::uint64_t n_train = n - n_test - n_val;
  for (std::uint64_t i = 0; i < n; ++i) {
    const Article& a = corpus.articles[order[i]];
    if (i < n_train) {
      split.train.articles.push_back(a);
    } else if (i < n_train + n_test) {
      split.test.articles.push_back(a);
    } else {
      split.val.articles.push_back(a);
    }
  }
  return split;
}

std::vector<Paraphrase> load_paraphrases(const std::filesystem::path& path) {
  std::vector<Paraphrase> out;
  std::unordered_set<std::string> seen;
  for_each_record(read_file(path), [&](std::size_t line_no, const nlohmann::json& record) {
    Paraphrase p{required_string(record, "id", line_no), required_string(record, "text", line_no)};
    if (p.id.empty()) throw MalformedRecord(line_no, "empty id");
    if (!seen.insert(p.id).second) throw DuplicateId(p.id);
    out.push_back(std::move(p));
  });
  return out;
}

SplitSpec parse_split_ratios(const std::string& ratios, std::uint64_t seed) {
  SplitSpec spec;
  spec.seed = seed;
  std::uint32_t parts[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = i < 2 ? ratios.find(':', pos) : ratios.size();
    if (end == std::string::npos) throw UsageError("ratios must look like 7:2:1");
    const std::string field = ratios.substr(pos, end - pos);
    if (field.empty() || !std::all_of(field.begin(), field.end(), ::isdigit) || field.size() > 9) {
      throw UsageError("ratios must look like 7:2:1");
    }
    parts[i] = static_cast<std::uint32_t>(std::stoul(field));
    if (parts[i] == 0) throw UsageError("split ratios must be positive");
    pos = end + 1;
  }
  spec.train_parts = parts[0];
  spec.test_parts = parts[1];
  spec.val_parts = parts[2];
  return spec;
}

}  // namespace jguard
