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

// The three meme classifiers:
//
//   BiLSTM     embedding -> dropout -> BiLSTM -> dropout -> temporal max-pool
//              -> dense(ReLU) -> dense(ReLU) -> dense(m) -> softmax
//   MNN-I      image 2048 -> dense(ReLU) 128; text embedding -> LSTM 128;
//              concat 256 -> dense(ReLU) -> dense(m) -> softmax
//   MNN-II     image 2048 -> dense(ReLU) 256; two LSTM branches (semantic and
//              sentiment-specific tables) -> concat -> dense(ReLU) 256;
//              concat 512 -> dense(ReLU) -> dense(m) -> softmax
//
// One classifier serves one task head.

#ifndef MEMOTION_MODELS_H_
#define MEMOTION_MODELS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "memotion/autograd.h"
#include "memotion/dataset.h"
#include "memotion/embeddings.h"
#include "memotion/kvconfig.h"
#include "memotion/layers.h"
#include "memotion/textnorm.h"

namespace memotion {

enum class Architecture { kBiLstmGlove, kMnn1, kMnn2 };

std::string ArchitectureName(Architecture arch);  // "bilstm", "mnn1", "mnn2"
Architecture ParseArchitecture(std::string_view name);
bool UsesImages(Architecture arch);

// kReference pins every width of the reference architectures; kCustom allows
// reduced widths (tests, small experiments) but still checks that the
// fusion widths add up.
enum class ShapeProfile { kReference, kCustom };

struct ModelConfig {
  Architecture architecture = Architecture::kMnn1;
  Head head = Head::kA;
  ShapeProfile profile = ShapeProfile::kReference;
  size_t seq_len = kDefaultSequenceLength;
  size_t vocab_size = 2;
  size_t d_semantic = 200;
  size_t d_sentiment = 50;
  size_t lstm_layers = 1;
  // MNN text branches.
  size_t lstm_hidden = 128;
  // Per-direction BiLSTM width; 0 means d_semantic / 2.
  size_t bilstm_hidden = 0;
  size_t image_dim = kImageEmbeddingDim;
  // 0 means the architecture default (128 for MNN-I, 256 for MNN-II).
  size_t image_proj = 0;
  size_t text_fusion = 256;
  size_t dense_hidden = 128;
  double dropout_in = 0.2;
  double dropout_out = 0.1;
  uint64_t seed = 1;

  size_t BiLstmHidden() const { return bilstm_hidden ? bilstm_hidden : d_semantic / 2; }
  size_t ImageProjection() const;
  // Width of the vector entering the classification layers: pooled BiLSTM
  // width, or the concatenated modalities for MNN-I/II.
  size_t FusedWidth() const;
  size_t classes() const { return static_cast<size_t>(ClassCount(head)); }

  KeyValues ToKeyValues() const;
  static ModelConfig FromKeyValues(const KeyValues& kv);
  bool operator==(const ModelConfig&) const = default;
};

// Throws Error(kConfigError) when the configuration breaks the shape ledger.
void ValidateConfig(const ModelConfig& config);

struct NamedParameter {
  std::string name;
  ag::Tensor tensor;
};

class MemeClassifier {
 public:
  // Missing tables are replaced by seeded random, trainable tables sized from
  // the config. Provided tables must match vocab_size and their dimension.
  explicit MemeClassifier(const ModelConfig& config, const EmbeddingTable* semantic = nullptr,
                          const EmbeddingTable* sentiment = nullptr);

  // Class probabilities. `image` may be empty (treated as all zeros) and is
  // ignored by the BiLSTM model. Dropout is active only when `training`.
  ag::Tensor Forward(const TokenSequence& seq, std::span<const double> image, bool training,
                     Rng& rng) const;
  ag::Tensor ForwardBiLstmGlove(const TokenSequence& seq, bool training, Rng& rng) const;
  ag::Tensor ForwardMnn1(const TokenSequence& seq, std::span<const double> image, bool training,
                         Rng& rng) const;
  ag::Tensor ForwardMnn2(const TokenSequence& seq, std::span<const double> image, bool training,
                         Rng& rng) const;

  // Inference-mode probabilities.
  std::vector<double> Predict(const TokenSequence& seq, std::span<const double> image) const;

  const ModelConfig& config() const { return config_; }
  const std::vector<NamedParameter>& parameters() const { return params_; }
  std::vector<NamedParameter>& parameters() { return params_; }
  ag::Tensor* FindParameter(const std::string& name);
  // Deep copy with independent parameter storage.
  MemeClassifier Clone() const;

  // Size of the fused vector seen in the most recent forward pass.
  size_t last_fused_width() const { return last_fused_width_; }

 private:
  ag::Tensor EncodeLstmStack(const std::vector<LstmParams>& stack, ag::Tensor x, size_t true_length) const;
  ag::Tensor Classify(const ag::Tensor& fused) const;
  ag::Tensor Image(std::span<const double> image) const;
  void Register(const std::string& name, ag::Tensor t) { params_.push_back({name, std::move(t)}); }

  ModelConfig config_;
  std::vector<NamedParameter> params_;

  ag::Tensor emb_semantic_;
  ag::Tensor emb_sentiment_;
  std::vector<LstmParams> lstm_sem_;   // forward BiLSTM direction / MNN semantic branch
  std::vector<LstmParams> lstm_aux_;   // backward BiLSTM direction / MNN-II sentiment branch
  DenseParams image_;
  DenseParams text_fusion_;
  std::vector<DenseParams> hidden_;
  DenseParams out_;
  mutable size_t last_fused_width_ = 0;
};

// A single training/inference instance for one head.
struct Example {
  std::string id;
  TokenSequence seq;
  std::vector<double> image;  // empty when the model takes no image
  int label = -1;             // -1 when unlabeled
};

Example MakeExample(const MemeRecord& record, const VocabIndex& vocab, const ModelConfig& config,
                    const ImageEmbeddingMap* images, const ContractionDict& dict);

// argmax with ties resolved to the lowest index.
int Argmax(std::span<const double> probs);

// Per-head argmax assembled into all three tasks' labels. Throws
// Error(kMissingHead) unless all nine heads are present.
MemeLabels AssembleLabels(const std::map<Head, std::vector<double>>& head_probs);

struct TrainedModel {
  MemeClassifier model;
  VocabIndex vocab;
};

std::map<Head, std::vector<double>> PredictHeads(const MemeRecord& record,
                                                 const std::map<Head, const TrainedModel*>& models,
                                                 const ImageEmbeddingMap* images,
                                                 const ContractionDict& dict);
MemeLabels PredictAllTasks(const MemeRecord& record, const std::map<Head, const TrainedModel*>& models,
                           const ImageEmbeddingMap* images, const ContractionDict& dict);

// MMCK format: "MMCK", u16 version, u32 config length, config text,
// u64 vocabulary hash, u32 token count, (u16 length, bytes) per token,
// u32 parameter count, then per parameter: u16 name length, name, u8 rank,
// u32 dims, u8 trainable, float64 values; all little-endian.
std::string EncodeCheckpoint(const MemeClassifier& model, const VocabIndex& vocab);
TrainedModel DecodeCheckpoint(std::string_view bytes);
void SaveCheckpoint(const MemeClassifier& model, const VocabIndex& vocab, const std::string& path);
TrainedModel LoadCheckpoint(const std::string& path);

}  // namespace memotion

#endif  // MEMOTION_MODELS_H_
