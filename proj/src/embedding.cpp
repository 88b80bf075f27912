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

#include "jguard/embedding.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "jguard/error.hpp"
#include "jguard/fusion.hpp"

namespace jguard {
namespace {

constexpr std::string_view kMagic = "JGEMB1";

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  void need(std::size_t n, const char* what) const {
    if (bytes_.size() - pos_ < n) throw DataError(std::string("embedding file truncated in ") + what);
  }
  std::uint32_t u32(const char* what) { return static_cast<std::uint32_t>(uint_le(4, what)); }
  std::uint16_t u16(const char* what) { return static_cast<std::uint16_t>(uint_le(2, what)); }
  float f32(const char* what) { return std::bit_cast<float>(u32(what)); }
  std::string bytes(std::size_t n, const char* what) {
    need(n, what);
    std::string out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  std::uint64_t uint_le(std::size_t n, const char* what) {
    need(n, what);
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < n; ++k) {
      v |= std::uint64_t{static_cast<unsigned char>(bytes_[pos_ + k])} << (8 * k);
    }
    pos_ += n;
    return v;
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

void put_le(std::string& out, std::uint64_t v, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out += static_cast<char>((v >> (8 * k)) & 0xFF);
}

}  // namespace

EmbeddingTable::EmbeddingTable(int dim, std::vector<EmbeddingRecord> records)
    : dim_(dim), records_(std::move(records)) {
  if (dim_ < 1) throw DataError("embedding dimension must be at least 1");
  for (std::size_t k = 0; k < records_.size(); ++k) {
    const EmbeddingRecord& r = records_[k];
    if (r.vector.size() != dim_) throw DataError("embedding '" + r.id + "' has the wrong dimension");
    if (!r.vector.allFinite()) throw NumericError("embedding '" + r.id + "' has non-finite values");
    if (!index_.emplace(r.id, k).second) throw DuplicateId(r.id);
  }
}

const EmbeddingRecord& EmbeddingTable::at(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw DataError("no embedding for id '" + id + "'");
  return records_[it->second];
}

EmbeddingTable parse_embeddings(const std::string& bytes) {
  Reader in(bytes);
  if (in.bytes(kMagic.size(), "magic") != kMagic) throw DataError("not a JGEMB1 embedding file");
  const std::uint32_t count = in.u32("header");
  const std::uint32_t dim = in.u32("header");
  if (dim == 0 || dim > (1u << 20)) throw DataError("implausible embedding dimension");
  std::vector<EmbeddingRecord> records;
  records.reserve(std::min<std::uint32_t>(count, 1u << 20));
  for (std::uint32_t k = 0; k < count; ++k) {
    EmbeddingRecord r;
    const std::uint16_t len = in.u16("record id length");
    r.id = in.bytes(len, "record id");
    r.vector.resize(dim);
    for (std::uint32_t d = 0; d < dim; ++d) r.vector[d] = in.f32("record vector");
    records.push_back(std::move(r));
  }
  if (!in.at_end()) throw DataError("trailing bytes after the last embedding record");
  return EmbeddingTable(static_cast<int>(dim), std::move(records));
}

EmbeddingTable read_embeddings(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_embeddings(buf.str());
}

std::string serialize_embeddings(const EmbeddingTable& table) {
  std::string out(kMagic);
  put_le(out, table.size(), 4);
  put_le(out, static_cast<std::uint32_t>(table.dim()), 4);
  for (const EmbeddingRecord& r : table.records()) {
    if (r.id.size() > 0xFFFF) throw DataError("embedding id longer than 65535 bytes");
    put_le(out, r.id.size(), 2);
    out += r.id;
    for (Eigen::Index d = 0; d < r.vector.size(); ++d) {
      put_le(out, std::bit_cast<std::uint32_t>(r.vector[d]), 4);
    }
  }
  return out;
}

void write_embeddings(const EmbeddingTable& table, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write '" + path.string() + "'");
  const std::string bytes = serialize_embeddings(table);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw DataError("write failed for '" + path.string() + "'");
}

EmbeddingProvider EmbeddingProvider::from_table(EmbeddingTable table) {
  EmbeddingProvider p;
  p.table_ = std::move(table);
  return p;
}

EmbeddingProvider EmbeddingProvider::pseudo(int dim, std::uint64_t seed, std::string salt) {
  if (dim < 1) throw UsageError("embedding dimension must be at least 1");
  EmbeddingProvider p;
  p.pseudo_ = true;
  p.pseudo_dim_ = dim;
  p.seed_ = seed;
  p.salt_ = std::move(salt);
  return p;
}

int EmbeddingProvider::dim() const { return pseudo_ ? pseudo_dim_ : table_.dim(); }

Eigen::VectorXd EmbeddingProvider::get(const std::string& id) const {
  if (pseudo_) {
    return pseudo_embed(salt_.empty() ? id : id + '\x1f' + salt_, pseudo_dim_, seed_);
  }
  return table_.at(id).vector.cast<double>();
}

Eigen::MatrixXd EmbeddingProvider::matrix_for(const Corpus& corpus) const {
  Eigen::MatrixXd m(dim(), static_cast<Eigen::Index>(corpus.size()));
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    m.col(static_cast<Eigen::Index>(k)) = get(corpus.articles[k].id);
  }
  return m;
}

}  // namespace jguard
