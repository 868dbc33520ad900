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

#include "memotion/models.h"

#include <algorithm>
#include <cmath>

#include "memotion/binio.h"
#include "memotion/error.h"

namespace memotion {

namespace {

constexpr char kCheckpointMagic[4] = {'M', 'M', 'C', 'K'};
constexpr uint16_t kCheckpointVersion = 1;

void Ledger(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kConfigError, "shape ledger violated: " + what);
}

ag::Tensor TableParameter(const EmbeddingTable& table) {
  ag::Tensor t = ag::Tensor::Parameter({table.vocab_size(), table.dim()}, table.matrix.data);
  if (!table.trainable) t.set_requires_grad(false);
  return t;
}

}  // namespace

std::string ArchitectureName(Architecture arch) {
  switch (arch) {
    case Architecture::kBiLstmGlove: return "bilstm";
    case Architecture::kMnn1: return "mnn1";
    case Architecture::kMnn2: return "mnn2";
  }
  return "?";
}

Architecture ParseArchitecture(std::string_view name) {
  for (Architecture a : {Architecture::kBiLstmGlove, Architecture::kMnn1, Architecture::kMnn2}) {
    if (name == ArchitectureName(a)) return a;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown architecture '" + std::string(name) + "'");
}

bool UsesImages(Architecture arch) { return arch != Architecture::kBiLstmGlove; }

size_t ModelConfig::ImageProjection() const {
  if (image_proj) return image_proj;
  return architecture == Architecture::kMnn2 ? 256 : 128;
}

size_t ModelConfig::FusedWidth() const {
  switch (architecture) {
    case Architecture::kBiLstmGlove: return 2 * BiLstmHidden();
    case Architecture::kMnn1: return lstm_hidden + ImageProjection();
    case Architecture::kMnn2: return text_fusion + ImageProjection();
  }
  return 0;
}

KeyValues ModelConfig::ToKeyValues() const {
  return {
      {"architecture", ArchitectureName(architecture)},
      {"head", HeadName(head)},
      {"profile", profile == ShapeProfile::kReference ? "reference" : "custom"},
      {"seq_len", std::to_string(seq_len)},
      {"vocab_size", std::to_string(vocab_size)},
      {"d_semantic", std::to_string(d_semantic)},
      {"d_sentiment", std::to_string(d_sentiment)},
      {"lstm_layers", std::to_string(lstm_layers)},
      {"lstm_hidden", std::to_string(lstm_hidden)},
      {"bilstm_hidden", std::to_string(bilstm_hidden)},
      {"image_dim", std::to_string(image_dim)},
      {"image_proj", std::to_string(image_proj)},
      {"text_fusion", std::to_string(text_fusion)},
      {"dense_hidden", std::to_string(dense_hidden)},
      {"dropout_in", FormatDouble(dropout_in)},
      {"dropout_out", FormatDouble(dropout_out)},
      {"seed", std::to_string(seed)},
  };
}

ModelConfig ModelConfig::FromKeyValues(const KeyValues& kv) {
  ModelConfig c;
  std::string s;
  if (GetString(kv, "architecture", s), !s.empty()) c.architecture = ParseArchitecture(s);
  s.clear();
  if (GetString(kv, "head", s), !s.empty()) c.head = ParseHead(s);
  s.clear();
  if (GetString(kv, "profile", s), !s.empty()) {
    if (s == "reference") {
      c.profile = ShapeProfile::kReference;
    } else if (s == "custom") {
      c.profile = ShapeProfile::kCustom;
    } else {
      throw Error(ErrorCode::kConfigError, "unknown shape profile '" + s + "'");
    }
  }
  GetSize(kv, "seq_len", c.seq_len);
  GetSize(kv, "vocab_size", c.vocab_size);
  GetSize(kv, "d_semantic", c.d_semantic);
  GetSize(kv, "d_sentiment", c.d_sentiment);
  GetSize(kv, "lstm_layers", c.lstm_layers);
  GetSize(kv, "lstm_hidden", c.lstm_hidden);
  GetSize(kv, "bilstm_hidden", c.bilstm_hidden);
  GetSize(kv, "image_dim", c.image_dim);
  GetSize(kv, "image_proj", c.image_proj);
  GetSize(kv, "text_fusion", c.text_fusion);
  GetSize(kv, "dense_hidden", c.dense_hidden);
  GetDouble(kv, "dropout_in", c.dropout_in);
  GetDouble(kv, "dropout_out", c.dropout_out);
  GetU64(kv, "seed", c.seed);
  return c;
}

void ValidateConfig(const ModelConfig& c) {
  Ledger(c.seq_len >= 1, "seq_len >= 1");
  Ledger(c.vocab_size >= 2, "vocab_size >= 2 (PAD and UNK)");
  Ledger(c.d_semantic >= 1 && c.dense_hidden >= 1, "positive widths");
  Ledger(c.lstm_layers == 1 || c.lstm_layers == 2, "lstm_layers in {1, 2}");
  Ledger(c.dropout_in >= 0 && c.dropout_in < 1 && c.dropout_out >= 0 && c.dropout_out < 1,
         "dropout rates in [0, 1)");
  const bool strict = c.profile == ShapeProfile::kReference;
  switch (c.architecture) {
    case Architecture::kBiLstmGlove:
      Ledger(c.BiLstmHidden() >= 1, "BiLSTM hidden >= 1");
      if (strict) {
        Ledger(2 * c.BiLstmHidden() == c.d_semantic,
               "BiLSTM pooled width 2h = " + std::to_string(2 * c.BiLstmHidden()) + " must equal d = " +
                   std::to_string(c.d_semantic));
      }
      break;
    case Architecture::kMnn1:
      Ledger(c.lstm_hidden >= 1 && c.ImageProjection() >= 1 && c.image_dim >= 1, "positive MNN-I widths");
      if (strict) {
        Ledger(c.image_dim == 2048, "MNN-I image input 2048, got " + std::to_string(c.image_dim));
        Ledger(c.ImageProjection() == 128, "MNN-I image projection 2048->128, got " +
                                               std::to_string(c.ImageProjection()));
        Ledger(c.lstm_hidden == 128, "MNN-I text branch 128, got " + std::to_string(c.lstm_hidden));
        Ledger(c.FusedWidth() == 256, "MNN-I concat 256");
      }
      break;
    case Architecture::kMnn2:
      Ledger(c.lstm_hidden >= 1 && c.ImageProjection() >= 1 && c.image_dim >= 1 && c.text_fusion >= 1 &&
                 c.d_sentiment >= 1,
             "positive MNN-II widths");
      if (strict) {
        Ledger(c.image_dim == 2048, "MNN-II image input 2048, got " + std::to_string(c.image_dim));
        Ledger(c.ImageProjection() == 256, "MNN-II image projection 2048->256, got " +
                                               std::to_string(c.ImageProjection()));
        Ledger(c.text_fusion == 256, "MNN-II text fusion 256, got " + std::to_string(c.text_fusion));
        Ledger(c.FusedWidth() == 512, "MNN-II final concat 512");
      }
      break;
  }
}

MemeClassifier::MemeClassifier(const ModelConfig& config, const EmbeddingTable* semantic,
                               const EmbeddingTable* sentiment)
    : config_(config) {
  ValidateConfig(config_);
  Rng rng(DeriveSeed(config_.seed, 0x6d6f64656c));

  auto table = [&](const EmbeddingTable* given, size_t dim, EmbeddingFamily family, uint64_t salt) {
    if (given) {
      if (given->vocab_size() != config_.vocab_size || given->dim() != dim) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "embedding table " + std::to_string(given->vocab_size()) + "x" +
                        std::to_string(given->dim()) + " does not match config " +
                        std::to_string(config_.vocab_size) + "x" + std::to_string(dim));
      }
      return TableParameter(*given);
    }
    EmbeddingTable t;
    t.family = family;
    t.trainable = true;
    t.matrix = Matrix(config_.vocab_size, dim);
    Rng trng(DeriveSeed(config_.seed, salt));
    for (size_t r = 1; r < config_.vocab_size; ++r) {
      for (size_t c = 0; c < dim; ++c) t.matrix.at(r, c) = trng.Uniform(-0.05, 0.05);
    }
    return TableParameter(t);
  };

  auto lstm_stack = [&](std::vector<LstmParams>& stack, size_t input, size_t hidden, const std::string& name) {
    for (size_t layer = 0; layer < config_.lstm_layers; ++layer) {
      stack.push_back(LstmParams::Init(layer == 0 ? input : hidden, hidden, rng));
      const std::string prefix = name + ".l" + std::to_string(layer);
      Register(prefix + ".w", stack.back().w);
      Register(prefix + ".u", stack.back().u);
      Register(prefix + ".b", stack.back().b);
    }
  };
  auto dense = [&](size_t in, size_t out, Activation act, const std::string& name) {
    DenseParams p = DenseParams::Init(in, out, act, rng);
    Register(name + ".w", p.w);
    Register(name + ".b", p.b);
    return p;
  };

  emb_semantic_ = table(semantic, config_.d_semantic, EmbeddingFamily::kSemantic, 0x73656d);
  Register("emb.semantic", emb_semantic_);
  const size_t m = config_.classes();

  switch (config_.architecture) {
    case Architecture::kBiLstmGlove: {
      const size_t h = config_.BiLstmHidden();
      for (size_t layer = 0; layer < config_.lstm_layers; ++layer) {
        const size_t input = layer == 0 ? config_.d_semantic : 2 * h;
        lstm_sem_.push_back(LstmParams::Init(input, h, rng));
        lstm_aux_.push_back(LstmParams::Init(input, h, rng));
        const std::string prefix = "bilstm.l" + std::to_string(layer);
        Register(prefix + ".fwd.w", lstm_sem_.back().w);
        Register(prefix + ".fwd.u", lstm_sem_.back().u);
        Register(prefix + ".fwd.b", lstm_sem_.back().b);
        Register(prefix + ".bwd.w", lstm_aux_.back().w);
        Register(prefix + ".bwd.u", lstm_aux_.back().u);
        Register(prefix + ".bwd.b", lstm_aux_.back().b);
      }
      hidden_.push_back(dense(config_.FusedWidth(), config_.dense_hidden, Activation::kRelu, "dense1"));
      hidden_.push_back(dense(config_.dense_hidden, config_.dense_hidden, Activation::kRelu, "dense2"));
      break;
    }
    case Architecture::kMnn1:
      image_ = dense(config_.image_dim, config_.ImageProjection(), Activation::kRelu, "image");
      lstm_stack(lstm_sem_, config_.d_semantic, config_.lstm_hidden, "lstm");
      hidden_.push_back(dense(config_.FusedWidth(), config_.dense_hidden, Activation::kRelu, "fc"));
      break;
    case Architecture::kMnn2:
      emb_sentiment_ = table(sentiment, config_.d_sentiment, EmbeddingFamily::kSentimentSpecific, 0x737377);
      Register("emb.sentiment", emb_sentiment_);
      image_ = dense(config_.image_dim, config_.ImageProjection(), Activation::kRelu, "image");
      lstm_stack(lstm_sem_, config_.d_semantic, config_.lstm_hidden, "lstm_semantic");
      lstm_stack(lstm_aux_, config_.d_sentiment, config_.lstm_hidden, "lstm_sentiment");
      text_fusion_ = dense(2 * config_.lstm_hidden, config_.text_fusion, Activation::kRelu, "text_fusion");
      hidden_.push_back(dense(config_.FusedWidth(), config_.dense_hidden, Activation::kRelu, "fc"));
      break;
  }
  out_ = dense(config_.dense_hidden, m, Activation::kNone, "out");
}

ag::Tensor* MemeClassifier::FindParameter(const std::string& name) {
  for (auto& p : params_) {
    if (p.name == name) return &p.tensor;
  }
  return nullptr;
}

MemeClassifier MemeClassifier::Clone() const {
  MemeClassifier copy(config_);
  for (size_t i = 0; i < params_.size(); ++i) {
    ag::Tensor& dst = copy.params_[i].tensor;
    const ag::Tensor& src = params_[i].tensor;
    std::copy(src.values().begin(), src.values().end(), dst.mutable_values().begin());
    if (dst.requires_grad() != src.requires_grad()) dst.set_requires_grad(src.requires_grad());
  }
  return copy;
}

ag::Tensor MemeClassifier::EncodeLstmStack(const std::vector<LstmParams>& stack, ag::Tensor x,
                                           size_t true_length) const {
  ag::Tensor last;
  for (const LstmParams& p : stack) {
    LstmOutput out = LstmEncode(x, true_length, p, false);
    x = out.outputs;
    last = out.last;
  }
  return last;
}

ag::Tensor MemeClassifier::Classify(const ag::Tensor& fused) const {
  if (fused.size() != config_.FusedWidth()) {
    throw Error(ErrorCode::kShapeMismatch, "fused width " + std::to_string(fused.size()) + " != " +
                                               std::to_string(config_.FusedWidth()));
  }
  last_fused_width_ = fused.size();
  ag::Tensor x = fused;
  for (const DenseParams& layer : hidden_) x = Dense(x, layer);
  return ag::Softmax(Dense(x, out_));
}

ag::Tensor MemeClassifier::Image(std::span<const double> image) const {
  if (image.empty()) return Dense(ag::Tensor::Zeros({config_.image_dim}), image_);
  if (image.size() != config_.image_dim) {
    throw Error(ErrorCode::kShapeMismatch, "image embedding has " + std::to_string(image.size()) +
                                               " values, model expects " + std::to_string(config_.image_dim));
  }
  return Dense(ag::Tensor::Vector(std::vector<double>(image.begin(), image.end())), image_);
}

ag::Tensor MemeClassifier::Forward(const TokenSequence& seq, std::span<const double> image,
                                   bool training, Rng& rng) const {
  switch (config_.architecture) {
    case Architecture::kBiLstmGlove: return ForwardBiLstmGlove(seq, training, rng);
    case Architecture::kMnn1: return ForwardMnn1(seq, image, training, rng);
    case Architecture::kMnn2: return ForwardMnn2(seq, image, training, rng);
  }
  throw Error(ErrorCode::kConfigError, "unknown architecture");
}

namespace {

void CheckSequence(const TokenSequence& seq, const ModelConfig& c) {
  if (seq.ids.size() != c.seq_len || seq.true_length > seq.ids.size()) {
    throw Error(ErrorCode::kShapeMismatch, "token sequence length " + std::to_string(seq.ids.size()) +
                                               " != configured n " + std::to_string(c.seq_len));
  }
}

void CheckArchitecture(const ModelConfig& c, Architecture want) {
  if (c.architecture != want) {
    throw Error(ErrorCode::kConfigError, "model is " + ArchitectureName(c.architecture) + ", not " +
                                             ArchitectureName(want));
  }
}

}  // namespace

ag::Tensor MemeClassifier::ForwardBiLstmGlove(const TokenSequence& seq, bool training, Rng& rng) const {
  CheckArchitecture(config_, Architecture::kBiLstmGlove);
  CheckSequence(seq, config_);
  ag::Tensor x = ag::Dropout(ag::Gather(emb_semantic_, seq.ids), config_.dropout_in, training, rng);
  for (size_t layer = 0; layer < lstm_sem_.size(); ++layer) {
    x = BiLstmEncode(x, seq.true_length, lstm_sem_[layer], lstm_aux_[layer]);
  }
  x = ag::Dropout(x, config_.dropout_out, training, rng);
  return Classify(ag::TemporalMaxPool(x, seq.true_length));
}

ag::Tensor MemeClassifier::ForwardMnn1(const TokenSequence& seq, std::span<const double> image,
                                       bool training, Rng& rng) const {
  CheckArchitecture(config_, Architecture::kMnn1);
  CheckSequence(seq, config_);
  ag::Tensor x = ag::Dropout(ag::Gather(emb_semantic_, seq.ids), config_.dropout_in, training, rng);
  ag::Tensor text = EncodeLstmStack(lstm_sem_, x, seq.true_length);
  return Classify(ag::Concat(text, Image(image)));
}

ag::Tensor MemeClassifier::ForwardMnn2(const TokenSequence& seq, std::span<const double> image,
                                       bool training, Rng& rng) const {
  CheckArchitecture(config_, Architecture::kMnn2);
  CheckSequence(seq, config_);
  ag::Tensor sem = ag::Dropout(ag::Gather(emb_semantic_, seq.ids), config_.dropout_in, training, rng);
  ag::Tensor sent = ag::Dropout(ag::Gather(emb_sentiment_, seq.ids), config_.dropout_in, training, rng);
  ag::Tensor text = Dense(ag::Concat(EncodeLstmStack(lstm_sem_, sem, seq.true_length),
                                     EncodeLstmStack(lstm_aux_, sent, seq.true_length)),
                          text_fusion_);
  return Classify(ag::Concat(text, Image(image)));
}

std::vector<double> MemeClassifier::Predict(const TokenSequence& seq, std::span<const double> image) const {
  Rng unused(0);
  ag::Tensor probs = Forward(seq, image, /*training=*/false, unused);
  return {probs.values().begin(), probs.values().end()};
}

Example MakeExample(const MemeRecord& record, const VocabIndex& vocab, const ModelConfig& config,
                    const ImageEmbeddingMap* images, const ContractionDict& dict) {
  Example ex;
  ex.id = record.id;
  ex.seq = PadOrTruncate(Normalize(record.description, dict), vocab, config.seq_len);
  if (UsesImages(config.architecture)) {
    ex.image.assign(config.image_dim, 0.0);
    if (images) {
      if (auto it = images->find(record.id); it != images->end()) {
        if (it->second.vector.size() != config.image_dim) {
          throw Error(ErrorCode::kDimensionMismatch, "image embedding for '" + record.id + "' has " +
                                                         std::to_string(it->second.vector.size()) + " values");
        }
        std::copy(it->second.vector.begin(), it->second.vector.end(), ex.image.begin());
      }
    }
  }
  if (auto label = HeadLabel(record.labels, config.head)) ex.label = *label;
  return ex;
}

int Argmax(std::span<const double> probs) {
  if (probs.empty()) throw Error(ErrorCode::kInvalidArgument, "argmax of an empty vector");
  size_t best = 0;
  for (size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return static_cast<int>(best);
}

MemeLabels AssembleLabels(const std::map<Head, std::vector<double>>& head_probs) {
  MemeLabels labels;
  for (Head h : kAllHeads) {
    auto it = head_probs.find(h);
    if (it == head_probs.end()) throw Error(ErrorCode::kMissingHead, "no prediction for head " + HeadName(h));
    if (it->second.size() != static_cast<size_t>(ClassCount(h))) {
      throw Error(ErrorCode::kShapeMismatch, "head " + HeadName(h) + " produced " +
                                                 std::to_string(it->second.size()) + " probabilities");
    }
    SetHeadLabel(labels, h, Argmax(it->second));
  }
  return labels;
}

std::map<Head, std::vector<double>> PredictHeads(const MemeRecord& record,
                                                 const std::map<Head, const TrainedModel*>& models,
                                                 const ImageEmbeddingMap* images,
                                                 const ContractionDict& dict) {
  std::map<Head, std::vector<double>> out;
  for (const auto& [head, trained] : models) {
    Example ex = MakeExample(record, trained->vocab, trained->model.config(), images, dict);
    out[head] = trained->model.Predict(ex.seq, ex.image);
  }
  return out;
}

MemeLabels PredictAllTasks(const MemeRecord& record, const std::map<Head, const TrainedModel*>& models,
                           const ImageEmbeddingMap* images, const ContractionDict& dict) {
  for (Head h : kAllHeads) {
    if (!models.count(h)) throw Error(ErrorCode::kMissingHead, "no model for head " + HeadName(h));
  }
  return AssembleLabels(PredictHeads(record, models, images, dict));
}

std::string EncodeCheckpoint(const MemeClassifier& model, const VocabIndex& vocab) {
  if (vocab.size() != model.config().vocab_size) {
    throw Error(ErrorCode::kDimensionMismatch, "vocabulary size does not match model config");
  }
  std::string out(kCheckpointMagic, sizeof(kCheckpointMagic));
  binio::PutU16(out, kCheckpointVersion);
  const std::string config = FormatKeyValues(model.config().ToKeyValues());
  binio::PutU32(out, static_cast<uint32_t>(config.size()));
  out += config;
  binio::PutU64(out, vocab.Hash());
  binio::PutU32(out, static_cast<uint32_t>(vocab.size()));
  for (const std::string& token : vocab.tokens()) {
    binio::PutU16(out, static_cast<uint16_t>(token.size()));
    out += token;
  }
  binio::PutU32(out, static_cast<uint32_t>(model.parameters().size()));
  for (const NamedParameter& p : model.parameters()) {
    binio::PutU16(out, static_cast<uint16_t>(p.name.size()));
    out += p.name;
    binio::PutU8(out, static_cast<uint8_t>(p.tensor.rank()));
    for (size_t dim : p.tensor.shape()) binio::PutU32(out, static_cast<uint32_t>(dim));
    binio::PutU8(out, p.tensor.requires_grad() ? 1 : 0);
    for (double v : p.tensor.values()) binio::PutF64(out, v);
  }
  return out;
}

TrainedModel DecodeCheckpoint(std::string_view bytes) {
  if (bytes.size() < 4 || bytes.substr(0, 4) != std::string_view(kCheckpointMagic, 4)) {
    throw Error(ErrorCode::kCorruptFile, "not an MMCK checkpoint");
  }
  binio::Reader reader(bytes.substr(4));
  const uint16_t version = reader.U16();
  if (version != kCheckpointVersion) {
    throw Error(ErrorCode::kVersionMismatch, "checkpoint version " + std::to_string(version) +
                                                 ", expected " + std::to_string(kCheckpointVersion));
  }
  ModelConfig config;
  try {
    config = ModelConfig::FromKeyValues(ParseKeyValues(reader.Bytes(reader.U32())));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kCorruptFile) throw;
    throw Error(ErrorCode::kCorruptFile, std::string("checkpoint config unreadable: ") + e.what());
  }
  const uint64_t hash = reader.U64();
  const uint32_t token_count = reader.U32();
  if (token_count < 2) throw Error(ErrorCode::kCorruptFile, "checkpoint vocabulary lacks reserved entries");
  std::vector<std::string> words;
  for (uint32_t i = 0; i < token_count; ++i) {
    std::string token = reader.Bytes(reader.U16());
    if (i >= 2) words.push_back(std::move(token));
  }
  VocabIndex vocab = VocabIndex::FromWords(words);
  if (vocab.Hash() != hash) throw Error(ErrorCode::kCorruptFile, "vocabulary hash mismatch");

  std::optional<MemeClassifier> model;
  try {
    model.emplace(config);
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorruptFile, std::string("checkpoint config invalid: ") + e.what());
  }
  const uint32_t count = reader.U32();
  if (count != model->parameters().size()) {
    throw Error(ErrorCode::kCorruptFile, "checkpoint has " + std::to_string(count) + " parameters, model " +
                                             std::to_string(model->parameters().size()));
  }
  for (NamedParameter& p : model->parameters()) {
    const std::string name = reader.Bytes(reader.U16());
    if (name != p.name) throw Error(ErrorCode::kCorruptFile, "unexpected parameter '" + name + "'");
    const uint8_t rank = reader.U8();
    ag::Shape shape(rank);
    for (auto& dim : shape) dim = reader.U32();
    if (shape != p.tensor.shape()) throw Error(ErrorCode::kCorruptFile, "shape mismatch for '" + name + "'");
    const bool trainable = reader.U8() != 0;
    if (trainable != p.tensor.requires_grad()) p.tensor.set_requires_grad(trainable);
    for (double& v : p.tensor.mutable_values()) {
      v = reader.F64();
      if (!std::isfinite(v)) throw Error(ErrorCode::kCorruptFile, "non-finite value in '" + name + "'");
    }
  }
  if (!reader.done()) throw Error(ErrorCode::kCorruptFile, "trailing bytes after parameters");
  return {std::move(*model), std::move(vocab)};
}

void SaveCheckpoint(const MemeClassifier& model, const VocabIndex& vocab, const std::string& path) {
  binio::WriteFileAtomic(path, EncodeCheckpoint(model, vocab));
}

TrainedModel LoadCheckpoint(const std::string& path) { return DecodeCheckpoint(binio::ReadFile(path)); }

}  // namespace memotion
