/* Copyright 2026 The Memotion Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "memotion/embeddings.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "memotion/binio.h"
#include "memotion/dataset.h"
#include "memotion/error.h"
#include "memotion/random.h"

namespace memotion {

namespace binio {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadableFile, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFileAtomic(const std::string& path, std::string_view bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kUnreadableFile, "cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kUnreadableFile, "short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorCode::kUnreadableFile, "cannot rename " + tmp + " to " + path);
  }
}

}  // namespace binio

namespace {

constexpr char kMembMagic[4] = {'M', 'E', 'M', 'B'};
constexpr uint16_t kMembVersion = 1;

}  // namespace

VocabIndex::VocabIndex() {
  tokens_ = {kPadToken, kUnkToken};
  index_ = {{kPadToken, kPad}, {kUnkToken, kUnk}};
}

VocabIndex VocabIndex::FromWords(const std::vector<std::string>& words) {
  VocabIndex vocab;
  for (const std::string& w : words) {
    if (w.empty()) throw Error(ErrorCode::kInvalidArgument, "empty vocabulary token");
    if (!vocab.index_.emplace(w, static_cast<int>(vocab.tokens_.size())).second) {
      throw Error(ErrorCode::kDuplicateId, "duplicate vocabulary token '" + w + "'");
    }
    vocab.tokens_.push_back(w);
  }
  return vocab;
}

int VocabIndex::Index(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnk : it->second;
}

uint64_t VocabIndex::Hash() const {
  uint64_t h = Fnv1a64(nullptr, 0);
  for (const std::string& t : tokens_) {
    h = Fnv1a64(t.data(), t.size(), h);
    h = Fnv1a64("\n", 1, h);
  }
  return h;
}

VocabIndex BuildVocab(const std::vector<std::vector<std::string>>& corpus, int min_count) {
  if (min_count < 1) throw Error(ErrorCode::kInvalidArgument, "min_count must be >= 1");
  std::unordered_map<std::string, size_t> freq;
  for (const auto& doc : corpus) {
    for (const std::string& t : doc) {
      if (t != VocabIndex::kPadToken && t != VocabIndex::kUnkToken) ++freq[t];
    }
  }
  std::vector<std::pair<std::string, size_t>> kept;
  for (auto& [tok, n] : freq) {
    if (n >= static_cast<size_t>(min_count)) kept.emplace_back(tok, n);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::vector<std::string> words;
  words.reserve(kept.size());
  for (auto& [tok, n] : kept) words.push_back(tok);
  return VocabIndex::FromWords(words);
}

EmbeddingTable RandomEmbeddingTable(const VocabIndex& vocab, size_t dim, EmbeddingFamily family,
                                    uint64_t seed) {
  EmbeddingTable table;
  table.family = family;
  table.trainable = true;
  table.matrix = Matrix(vocab.size(), dim);
  Rng rng(seed);
  for (size_t r = 1; r < vocab.size(); ++r) {
    for (size_t c = 0; c < dim; ++c) table.matrix.at(r, c) = rng.Uniform(-0.05, 0.05);
  }
  return table;
}

EmbeddingTable LoadWordVectors(const std::string& path, const VocabIndex& vocab, size_t dim,
                               EmbeddingFamily family, uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kUnreadableFile, "cannot open word vectors " + path);

  EmbeddingTable table;
  table.family = family;
  table.trainable = false;
  table.matrix = Matrix(vocab.size(), dim);
  std::vector<bool> filled(vocab.size(), false);
  std::vector<double> sum(dim, 0.0);
  size_t loaded = 0;

  std::string line;
  size_t line_no = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    values.clear();
    std::string field;
    bool numeric = true;
    while (fields >> field) {
      double v = 0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        numeric = false;
        break;
      }
      values.push_back(v);
    }
    // word2vec text files open with "<count> <dim>".
    if (line_no == 1 && values.size() == 1 && numeric &&
        std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      continue;
    }
    if (!numeric) {
      throw Error(ErrorCode::kDimensionMismatch,
                  path + ":" + std::to_string(line_no) + ": non-numeric vector component");
    }
    if (values.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch, path + ":" + std::to_string(line_no) + ": expected " +
                                                     std::to_string(dim) + " values, got " +
                                                     std::to_string(values.size()));
    }
    for (double v : values) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFinite, path + ":" + std::to_string(line_no) + ": non-finite value");
      }
    }
    for (size_t c = 0; c < dim; ++c) sum[c] += values[c];
    ++loaded;
    int idx = vocab.Index(token);
    if (idx >= 2) {
      std::copy(values.begin(), values.end(), table.matrix.data.begin() + static_cast<long>(idx * dim));
      filled[static_cast<size_t>(idx)] = true;
    }
  }

  Rng rng(seed);
  for (size_t r = 2; r < vocab.size(); ++r) {
    if (filled[r]) continue;
    for (size_t c = 0; c < dim; ++c) table.matrix.at(r, c) = rng.Uniform(-0.05, 0.05);
  }
  for (size_t c = 0; c < dim; ++c) {
    table.matrix.at(VocabIndex::kUnk, c) = loaded ? sum[c] / static_cast<double>(loaded) : 0.0;
  }
  return table;
}

Matrix LookupSequence(const TokenSequence& seq, const EmbeddingTable& table) {
  const size_t d = table.dim();
  Matrix out(seq.ids.size(), d);
  for (size_t t = 0; t < seq.ids.size(); ++t) {
    const int id = seq.ids[t];
    if (id < 0 || static_cast<size_t>(id) >= table.vocab_size()) {
      throw Error(ErrorCode::kIndexOutOfRange, "token id " + std::to_string(id) + " outside table");
    }
    std::copy_n(table.matrix.data.begin() + static_cast<long>(static_cast<size_t>(id) * d), d,
                out.data.begin() + static_cast<long>(t * d));
  }
  return out;
}

std::string EncodeImageEmbeddings(const std::vector<ImageEmbedding>& entries, uint32_t dim) {
  std::string out(kMembMagic, sizeof(kMembMagic));
  binio::PutU16(out, kMembVersion);
  binio::PutU32(out, dim);
  binio::PutU32(out, static_cast<uint32_t>(entries.size()));
  std::unordered_map<std::string, bool> ids;
  for (const ImageEmbedding& e : entries) {
    if (!ids.emplace(e.meme_id, true).second) {
      throw Error(ErrorCode::kDuplicateId, "duplicate image embedding id '" + e.meme_id + "'");
    }
    if (e.vector.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch, "image embedding '" + e.meme_id + "' has " +
                                                     std::to_string(e.vector.size()) + " values, want " +
                                                     std::to_string(dim));
    }
    if (e.meme_id.size() > UINT16_MAX) {
      throw Error(ErrorCode::kInvalidArgument, "image embedding id too long");
    }
    binio::PutU16(out, static_cast<uint16_t>(e.meme_id.size()));
    out += e.meme_id;
    for (float v : e.vector) {
      if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "non-finite value in '" + e.meme_id + "'");
      binio::PutF32(out, v);
    }
  }
  return out;
}

ImageEmbeddingMap DecodeImageEmbeddings(std::string_view bytes, uint32_t expected_dim) {
  if (bytes.size() < sizeof(kMembMagic) || bytes.substr(0, 4) != std::string_view(kMembMagic, 4)) {
    throw Error(ErrorCode::kBadMagic, "not a MEMB image-embedding file");
  }
  binio::Reader reader(bytes.substr(4));
  const uint16_t version = reader.U16();
  if (version != kMembVersion) {
    throw Error(ErrorCode::kVersionMismatch, "unsupported MEMB version " + std::to_string(version));
  }
  const uint32_t dim = reader.U32();
  if (expected_dim != 0 && dim != expected_dim) {
    throw Error(ErrorCode::kDimensionMismatch, "MEMB header dim " + std::to_string(dim) +
                                                   " != expected " + std::to_string(expected_dim));
  }
  const uint32_t count = reader.U32();
  ImageEmbeddingMap out;
  for (uint32_t i = 0; i < count; ++i) {
    ImageEmbedding e;
    e.meme_id = reader.Bytes(reader.U16());
    e.vector.resize(dim);
    for (uint32_t k = 0; k < dim; ++k) {
      e.vector[k] = reader.F32();
      if (!std::isfinite(e.vector[k])) {
        throw Error(ErrorCode::kNonFinite, "non-finite value in '" + e.meme_id + "'");
      }
    }
    std::string id = e.meme_id;
    if (!out.emplace(id, std::move(e)).second) {
      throw Error(ErrorCode::kDuplicateId, "duplicate image embedding id '" + id + "'");
    }
  }
  if (!reader.done()) throw Error(ErrorCode::kCorruptFile, "trailing bytes after MEMB entries");
  return out;
}

void WriteImageEmbeddings(const std::vector<ImageEmbedding>& entries, const std::string& path,
                          uint32_t dim) {
  binio::WriteFileAtomic(path, EncodeImageEmbeddings(entries, dim));
}

ImageEmbeddingMap ReadImageEmbeddings(const std::string& path, uint32_t expected_dim) {
  return DecodeImageEmbeddings(binio::ReadFile(path), expected_dim);
}

}  // namespace memotion
