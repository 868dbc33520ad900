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

#include <unistd.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "gtest/gtest.h"
#include "memotion/binio.h"
#include "memotion/dataset.h"
#include "memotion/error.h"
#include "memotion/random.h"

namespace memotion {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("memotion_emb_" + std::to_string(::getpid()) + "_" +
                                         std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string File(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(BuildVocab, MinCountThreshold) {
  const VocabIndex v = BuildVocab({{"a", "a", "b"}}, 2);
  EXPECT_EQ(v.tokens(), (std::vector<std::string>{"<pad>", "<unk>", "a"}));
}

TEST(BuildVocab, EmptyCorpus) {
  const VocabIndex v = BuildVocab({}, 1);
  EXPECT_EQ(v.size(), 2u);
  EXPECT_EQ(v.Index("<pad>"), 0);
  EXPECT_EQ(v.Index("<unk>"), 1);
}

TEST(BuildVocab, FrequencyThenLexicographic) {
  const VocabIndex v = BuildVocab({{"b", "c", "a"}, {"c", "b", "d"}}, 1);
  EXPECT_EQ(v.tokens(), (std::vector<std::string>{"<pad>", "<unk>", "b", "c", "a", "d"}));
  EXPECT_EQ(v.Index("zzz"), VocabIndex::kUnk);
}

TEST(VocabIndex, RejectsDuplicatesAndReserved) {
  EXPECT_THROW(VocabIndex::FromWords({"a", "a"}), Error);
  EXPECT_THROW(VocabIndex::FromWords({"<pad>"}), Error);
}

TEST(VocabIndex, HashDependsOnOrder) {
  EXPECT_EQ(VocabIndex::FromWords({"a", "b"}).Hash(), VocabIndex::FromWords({"a", "b"}).Hash());
  EXPECT_NE(VocabIndex::FromWords({"a", "b"}).Hash(), VocabIndex::FromWords({"b", "a"}).Hash());
}

TEST(LoadWordVectors, CopiesFileRows) {
  TempDir dir;
  std::string line = "cat";
  std::vector<double> expected;
  for (int k = 0; k < 200; ++k) {
    expected.push_back(0.001 * k - 0.1);
    line += " " + std::to_string(expected.back());
  }
  std::string dog = "dog";
  for (int k = 0; k < 200; ++k) dog += " 0.5";
  WriteText(dir.File("glove.txt"), line + "\n" + dog + "\n");

  const VocabIndex v = VocabIndex::FromWords({"cat", "bird"});
  const EmbeddingTable t = LoadWordVectors(dir.File("glove.txt"), v, 200, EmbeddingFamily::kSemantic, 3);
  ASSERT_EQ(t.matrix.rows, 4u);
  ASSERT_EQ(t.dim(), 200u);
  EXPECT_FALSE(t.trainable);
  for (size_t k = 0; k < 200; ++k) {
    EXPECT_NEAR(t.matrix.at(v.Index("cat"), k), expected[k], 1e-12);
    EXPECT_EQ(t.matrix.at(VocabIndex::kPad, k), 0.0);
    const double bird = t.matrix.at(v.Index("bird"), k);
    EXPECT_GE(bird, -0.05);
    EXPECT_LE(bird, 0.05);
    // UNK is the mean over every vector in the file.
    EXPECT_NEAR(t.matrix.at(VocabIndex::kUnk, k), (expected[k] + 0.5) / 2, 1e-12);
  }
}

TEST(LoadWordVectors, SkipsWord2VecHeader) {
  TempDir dir;
  WriteText(dir.File("w2v.txt"), "2 3\na 1 2 3\nb 4 5 6\n");
  const EmbeddingTable t =
      LoadWordVectors(dir.File("w2v.txt"), VocabIndex::FromWords({"b"}), 3, EmbeddingFamily::kSentimentSpecific);
  EXPECT_EQ(t.matrix.at(2, 2), 6.0);
  EXPECT_EQ(t.family, EmbeddingFamily::kSentimentSpecific);
}

TEST(LoadWordVectors, Errors) {
  TempDir dir;
  WriteText(dir.File("bad.txt"), "a 1 2 3\nb 1 2\n");
  EXPECT_EQ(CodeOf([&] { LoadWordVectors(dir.File("bad.txt"), VocabIndex(), 3, EmbeddingFamily::kSemantic); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(CodeOf([&] { LoadWordVectors(dir.File("none.txt"), VocabIndex(), 3, EmbeddingFamily::kSemantic); }),
            ErrorCode::kUnreadableFile);
}

TEST(RandomEmbeddingTable, PadRowZeroAndRange) {
  const EmbeddingTable t = RandomEmbeddingTable(VocabIndex::FromWords({"a", "b"}), 5, EmbeddingFamily::kSemantic, 1);
  EXPECT_TRUE(t.trainable);
  for (size_t k = 0; k < 5; ++k) EXPECT_EQ(t.matrix.at(0, k), 0.0);
  for (double v : t.matrix.data) EXPECT_LE(std::abs(v), 0.05);
}

EmbeddingTable SmallTable(uint64_t seed) {
  return RandomEmbeddingTable(VocabIndex::FromWords({"a", "b", "c", "d"}), 3, EmbeddingFamily::kSemantic, seed);
}

TEST(LookupSequence, AllPadIsZero) {
  TokenSequence s{{0, 0, 0}, 0};
  const Matrix m = LookupSequence(s, SmallTable(1));
  EXPECT_EQ(m, Matrix(3, 3, 0.0));
}

TEST(LookupSequence, LeadingTokenThenPad) {
  const EmbeddingTable t = SmallTable(2);
  const Matrix m = LookupSequence({{4, 0, 0}, 1}, t);
  for (size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(m.at(0, k), t.matrix.at(4, k));
    EXPECT_EQ(m.at(1, k), 0.0);
    EXPECT_EQ(m.at(2, k), 0.0);
  }
}

TEST(LookupSequence, MatchesGatherLoopOracle) {
  const EmbeddingTable t = SmallTable(3);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    TokenSequence s;
    s.ids.resize(1 + rng.Below(10));
    for (int& id : s.ids) id = static_cast<int>(rng.Below(t.vocab_size()));
    s.true_length = s.ids.size();
    const Matrix m = LookupSequence(s, t);
    for (size_t r = 0; r < s.ids.size(); ++r) {
      for (size_t k = 0; k < t.dim(); ++k) {
        ASSERT_EQ(m.at(r, k), t.matrix.data[static_cast<size_t>(s.ids[r]) * t.dim() + k]);
      }
    }
  }
}

TEST(LookupSequenceProperty, LinearInTable) {
  const EmbeddingTable a = SmallTable(7);
  EmbeddingTable scaled = a;
  const double alpha = -2.5;
  for (double& v : scaled.matrix.data) v *= alpha;
  const TokenSequence s{{3, 1, 5, 0}, 3};
  const Matrix ma = LookupSequence(s, a);
  const Matrix ms = LookupSequence(s, scaled);
  for (size_t i = 0; i < ma.data.size(); ++i) EXPECT_EQ(ms.data[i], alpha * ma.data[i]);
}

std::vector<ImageEmbedding> ThreeEntries() {
  std::vector<ImageEmbedding> e;
  Rng rng(9);
  for (const char* id : {"x1", "meme_two", "3"}) {
    ImageEmbedding img{id, std::vector<float>(kImageEmbeddingDim)};
    for (float& v : img.vector) v = static_cast<float>(rng.Uniform(-4, 4));
    e.push_back(img);
  }
  return e;
}

TEST(ImageEmbeddings, RoundTripThreeEntries) {
  TempDir dir;
  const auto entries = ThreeEntries();
  WriteImageEmbeddings(entries, dir.File("img.memb"));
  const ImageEmbeddingMap m = ReadImageEmbeddings(dir.File("img.memb"));
  ASSERT_EQ(m.size(), 3u);
  for (const auto& e : entries) {
    ASSERT_TRUE(m.count(e.meme_id));
    EXPECT_EQ(std::memcmp(m.at(e.meme_id).vector.data(), e.vector.data(), e.vector.size() * sizeof(float)), 0);
  }
}

TEST(ImageEmbeddings, SingleZeroEntry) {
  const std::string bytes = EncodeImageEmbeddings({{"z", std::vector<float>(2048, 0.0f)}});
  const ImageEmbeddingMap m = DecodeImageEmbeddings(bytes);
  EXPECT_EQ(m.at("z").vector, std::vector<float>(2048, 0.0f));
}

TEST(ImageEmbeddings, LayoutIsLittleEndian) {
  const std::string b = EncodeImageEmbeddings({{"ab", {1.0f, -2.0f}}}, 2);
  const std::string expected_head = std::string("MEMB") + std::string("\x01\x00", 2) +
                                    std::string("\x02\x00\x00\x00", 4) + std::string("\x01\x00\x00\x00", 4) +
                                    std::string("\x02\x00", 2) + "ab";
  ASSERT_EQ(b.size(), expected_head.size() + 8);
  EXPECT_EQ(b.substr(0, expected_head.size()), expected_head);
  EXPECT_EQ(b.substr(expected_head.size()), std::string("\x00\x00\x80\x3f\x00\x00\x00\xc0", 8));
}

TEST(ImageEmbeddings, Errors) {
  const std::string good = EncodeImageEmbeddings(ThreeEntries());
  std::string bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_EQ(CodeOf([&] { DecodeImageEmbeddings(bad_magic); }), ErrorCode::kBadMagic);
  EXPECT_EQ(CodeOf([&] { DecodeImageEmbeddings(good, 1024); }), ErrorCode::kDimensionMismatch);
  EXPECT_NO_THROW(DecodeImageEmbeddings(good, 0));
  auto dup = ThreeEntries();
  dup[1].meme_id = dup[0].meme_id;
  EXPECT_EQ(CodeOf([&] { EncodeImageEmbeddings(dup); }), ErrorCode::kDuplicateId);
  std::string trailing = good + "x";
  EXPECT_EQ(CodeOf([&] { DecodeImageEmbeddings(trailing); }), ErrorCode::kCorruptFile);
  std::string version = good;
  version[4] = 9;
  EXPECT_EQ(CodeOf([&] { DecodeImageEmbeddings(version); }), ErrorCode::kVersionMismatch);
  EXPECT_EQ(CodeOf([&] { ReadImageEmbeddings("/nonexistent.memb"); }), ErrorCode::kUnreadableFile);
}

TEST(ImageEmbeddings, WrongVectorLengthRejected) {
  EXPECT_THROW(EncodeImageEmbeddings({{"a", std::vector<float>(10)}}), Error);
}

// Every strict prefix must fail loudly, never decode partially.
TEST(ImageEmbeddings, TruncationFuzz) {
  std::vector<ImageEmbedding> e = {{"a", {1, 2, 3}}, {"bb", {4, 5, 6}}};
  const std::string good = EncodeImageEmbeddings(e, 3);
  for (size_t len = 0; len < good.size(); ++len) {
    const ErrorCode code = CodeOf([&] { DecodeImageEmbeddings(good.substr(0, len), 3); });
    EXPECT_TRUE(code == ErrorCode::kBadMagic || code == ErrorCode::kCorruptFile) << "prefix " << len;
  }
}

TEST(ImageEmbeddingsProperty, RoundTripIdentity) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const uint32_t dim = 1 + static_cast<uint32_t>(rng.Below(16));
    std::vector<ImageEmbedding> entries(rng.Below(6));
    for (size_t i = 0; i < entries.size(); ++i) {
      entries[i].meme_id = "id" + std::to_string(i);
      entries[i].vector.resize(dim);
      for (float& v : entries[i].vector) v = static_cast<float>(rng.Uniform(-1e3, 1e3));
    }
    const ImageEmbeddingMap m = DecodeImageEmbeddings(EncodeImageEmbeddings(entries, dim), dim);
    ASSERT_EQ(m.size(), entries.size());
    for (const auto& e : entries) EXPECT_EQ(m.at(e.meme_id), e);
  }
}

}  // namespace
}  // namespace memotion
