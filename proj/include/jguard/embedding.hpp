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
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "jguard/corpus.hpp"

namespace jguard {

/// One document embedding as stored on disk (32-bit floats).
struct EmbeddingRecord {
  std::string id;
  Eigen::VectorXf vector;
};

/// Embeddings loaded from a JGEMB1 file, in file order, indexed by id.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(int dim, std::vector<EmbeddingRecord> records);

  int dim() const { return dim_; }
  std::size_t size() const { return records_.size(); }
  const std::vector<EmbeddingRecord>& records() const { return records_; }
  bool contains(const std::string& id) const { return index_.contains(id); }
  /// Throws DataError for an unknown id.
  const EmbeddingRecord& at(const std::string& id) const;

 private:
  int dim_ = 0;
  std::vector<EmbeddingRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// JGEMB1 layout, all integers little-endian:
///   "JGEMB1" | u32 count | u32 dim | count x (u16 id_len | id bytes | dim x f32)
EmbeddingTable parse_embeddings(const std::string& bytes);
EmbeddingTable read_embeddings(const std::filesystem::path& path);
std::string serialize_embeddings(const EmbeddingTable& table);
void write_embeddings(const EmbeddingTable& table, const std::filesystem::path& path);

/// Where a fusion detector gets B_d^CLS from: a loaded table, or
/// deterministic pseudo-embeddings keyed by (id, salt, seed).
class EmbeddingProvider {
 public:
  static EmbeddingProvider from_table(EmbeddingTable table);
  static EmbeddingProvider pseudo(int dim, std::uint64_t seed, std::string salt = {});

  int dim() const;
  Eigen::VectorXd get(const std::string& id) const;
  /// d x N matrix of embeddings for the corpus, in article order.
  Eigen::MatrixXd matrix_for(const Corpus& corpus) const;

 private:
  bool pseudo_ = false;
  int pseudo_dim_ = 0;
  std::uint64_t seed_ = 0;
  std::string salt_;
  EmbeddingTable table_;
};

}  // namespace jguard
