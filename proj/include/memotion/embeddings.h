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

#ifndef MEMOTION_EMBEDDINGS_H_
#define MEMOTION_EMBEDDINGS_H_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace memotion {

// Dense row-major matrix of doubles.
struct Matrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(size_t r, size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& at(size_t r, size_t c) { return data[r * cols + c]; }
  double at(size_t r, size_t c) const { return data[r * cols + c]; }
  bool operator==(const Matrix&) const = default;
};

// Token <-> index map with PAD at 0 and UNK at 1.
class VocabIndex {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr const char* kPadToken = "<pad>";
  static constexpr const char* kUnkToken = "<unk>";

  VocabIndex();
  // `words` excludes the reserved entries; duplicates are rejected.
  static VocabIndex FromWords(const std::vector<std::string>& words);

  int Index(const std::string& token) const;
  const std::string& Token(int index) const { return tokens_.at(static_cast<size_t>(index)); }
  bool Contains(const std::string& token) const { return index_.count(token) != 0; }
  size_t size() const { return tokens_.size(); }
  // All tokens in index order, reserved entries included.
  const std::vector<std::string>& tokens() const { return tokens_; }
  uint64_t Hash() const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

// Keeps tokens seen at least `min_count` times, ordered by frequency
// (descending) then lexicographically.
VocabIndex BuildVocab(const std::vector<std::vector<std::string>>& corpus, int min_count);

enum class EmbeddingFamily { kSemantic, kSentimentSpecific };

struct EmbeddingTable {
  Matrix matrix;  // V x d; row 0 is PAD and stays zero
  EmbeddingFamily family = EmbeddingFamily::kSemantic;
  bool trainable = false;

  size_t dim() const { return matrix.cols; }
  size_t vocab_size() const { return matrix.rows; }
};

// Seeded uniform [-0.05, 0.05] table, PAD row zero, trainable.
EmbeddingTable RandomEmbeddingTable(const VocabIndex& vocab, size_t dim, EmbeddingFamily family,
                                    uint64_t seed);

// Reads `token v1 ... vd` lines (an optional word2vec "count dim" header is
// skipped). In-vocab tokens copy their file row, in-vocab tokens missing
// from the file get seeded uniform [-0.05, 0.05] values, UNK is the mean of
// every vector in the file and PAD is zero. The table is frozen.
EmbeddingTable LoadWordVectors(const std::string& path, const VocabIndex& vocab, size_t dim,
                               EmbeddingFamily family, uint64_t seed = 0);

struct TokenSequence;
// n x d matrix whose row t is the table row for seq.ids[t].
Matrix LookupSequence(const TokenSequence& seq, const EmbeddingTable& table);

inline constexpr uint32_t kImageEmbeddingDim = 2048;

struct ImageEmbedding {
  std::string meme_id;
  std::vector<float> vector;
  bool operator==(const ImageEmbedding&) const = default;
};

using ImageEmbeddingMap = std::map<std::string, ImageEmbedding>;

// MEMB format: "MEMB", u16 version, u32 dim, u32 count, then per entry
// u16 id length, id bytes, dim little-endian float32 values.
std::string EncodeImageEmbeddings(const std::vector<ImageEmbedding>& entries,
                                  uint32_t dim = kImageEmbeddingDim);
// expected_dim == 0 accepts whatever dimension the header declares.
ImageEmbeddingMap DecodeImageEmbeddings(std::string_view bytes,
                                        uint32_t expected_dim = kImageEmbeddingDim);
void WriteImageEmbeddings(const std::vector<ImageEmbedding>& entries, const std::string& path,
                          uint32_t dim = kImageEmbeddingDim);
ImageEmbeddingMap ReadImageEmbeddings(const std::string& path,
                                      uint32_t expected_dim = kImageEmbeddingDim);

}  // namespace memotion

#endif  // MEMOTION_EMBEDDINGS_H_
