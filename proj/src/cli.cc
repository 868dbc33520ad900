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

#include "memotion/cli.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "memotion/binio.h"
#include "memotion/csv.h"
#include "memotion/dataset.h"
#include "memotion/metrics.h"
#include "memotion/models.h"
#include "memotion/synthetic.h"
#include "memotion/textnorm.h"
#include "memotion/training.h"

namespace memotion {

namespace fs = std::filesystem;
using nlohmann::json;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kConfigError:
      return kExitBadArgs;
    case ErrorCode::kUnreadableFile:
    case ErrorCode::kMissingModality:
      return kExitMissingInput;
    case ErrorCode::kMissingColumn:
    case ErrorCode::kEmptyCorpus:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kBadMagic:
    case ErrorCode::kDuplicateId:
    case ErrorCode::kVersionMismatch:
    case ErrorCode::kCorruptFile:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kClassOutOfRange:
    case ErrorCode::kMissingHead:
      return kExitSchema;
    case ErrorCode::kNonFinite:
    case ErrorCode::kNonFiniteLoss:
      return kExitNumeric;
    default:
      return kExitInternal;
  }
}

namespace {

std::string ResolveInput(const std::string& path) {
  if (path.empty() || fs::exists(path) || fs::path(path).is_absolute()) return path;
  if (const char* dir = std::getenv(kDataDirEnv); dir && *dir) {
    fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;
}

std::string RequireInput(const std::string& path, const char* what) {
  std::string resolved = ResolveInput(path);
  if (!fs::exists(resolved)) throw Error(ErrorCode::kUnreadableFile, std::string(what) + " not found: " + path);
  return resolved;
}

std::string Hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string FileDigest(const std::string& path) {
  std::string bytes = binio::ReadFile(path);
  return Hex64(Fnv1a64(bytes.data(), bytes.size()));
}

void WriteText(const std::string& path, const std::string& text) { binio::WriteFileAtomic(path, text); }

// Width of the first vector line in a word-vector file.
size_t DetectVectorDim(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kUnreadableFile, "cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(f);
    if (parts.size() == 2) continue;  // word2vec header
    if (parts.size() < 2) continue;
    return parts.size() - 1;
  }
  throw Error(ErrorCode::kEmptyCorpus, "no vectors in " + path);
}

const std::set<std::string>& KnownConfigKeys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k;
    for (const auto& [key, value] : ModelConfig{}.ToKeyValues()) k.insert(key);
    for (const auto& [key, value] : TrainConfig{}.ToKeyValues()) k.insert(key);
    return k;
  }();
  return keys;
}

KeyValues LoadConfigFile(const std::string& path) {
  if (path.empty()) return {};
  KeyValues kv = ReadKeyValuesFile(RequireInput(path, "config file"));
  for (const auto& [key, value] : kv) {
    if (!KnownConfigKeys().count(key)) throw Error(ErrorCode::kConfigError, "unknown config key '" + key + "'");
  }
  return kv;
}

// Prediction/gold CSV column that carries `head`. Task C motivational shares
// the `motivational` column with Task B.
std::string HeadColumn(Head head) {
  switch (head) {
    case Head::kA: return "sentiment";
    case Head::kBHumour: return "humorous";
    case Head::kBSarcasm: return "sarcastic";
    case Head::kBOffense: return "offensive";
    case Head::kBMotivational: return "motivational";
    case Head::kCHumour: return "humour_scale";
    case Head::kCSarcasm: return "sarcasm_scale";
    case Head::kCOffense: return "offense_scale";
    case Head::kCMotivational: return "motivational";
  }
  return "";
}

std::optional<int> ParseHeadValue(Head head, std::string_view s) {
  auto idx = [](auto v) -> std::optional<int> {
    if (!v) return std::nullopt;
    return static_cast<int>(*v);
  };
  switch (head) {
    case Head::kA: return idx(ParseSentiment(s));
    case Head::kCHumour: return idx(ParseHumourScale(s));
    case Head::kCSarcasm: return idx(ParseSarcasmScale(s));
    case Head::kCOffense: return idx(ParseOffenseScale(s));
    default: {
      auto f = ParseFlag(s);
      if (!f) return std::nullopt;
      return *f ? 1 : 0;
    }
  }
}

std::string FormatHeadValue(Head head, int cls) {
  if (ClassCount(head) == 2) return cls ? "1" : "0";
  return ClassNames(head).at(static_cast<size_t>(cls));
}

const std::vector<std::string> kPredictionColumns = {"id",           "sentiment",    "humorous",
                                                     "sarcastic",    "offensive",    "motivational",
                                                     "humour_scale", "sarcasm_scale", "offense_scale"};

std::vector<Head> ParseTaskOrHead(const std::string& s, bool exclude_motivational) {
  std::vector<Head> heads;
  if (s == "A" || s == "a") {
    heads = {Head::kA};
  } else if (s == "B" || s == "b") {
    heads = HeadsOfTask(Task::kB);
  } else if (s == "C" || s == "c") {
    heads = HeadsOfTask(Task::kC);
  } else {
    heads = {ParseHead(s)};
  }
  if (exclude_motivational) {
    std::erase_if(heads, [](Head h) { return h == Head::kBMotivational || h == Head::kCMotivational; });
  }
  if (heads.empty()) throw Error(ErrorCode::kInvalidArgument, "no heads left to evaluate");
  return heads;
}

// ---------------------------------------------------------------- train --

struct TrainArgs {
  std::string corpus;
  std::string task = "A";
  std::string arch = "mnn1";
  std::string embeddings;
  std::string sentiment_embeddings;
  std::string images;
  std::string dict;
  std::string config;
  std::string out;
  std::string report;
  std::string manifest;
  std::optional<uint64_t> seed;
  std::optional<size_t> epochs;
  std::optional<double> learning_rate;
  size_t threads = 1;
};

struct Session {
  ModelConfig model;
  TrainConfig train;
  ContractionDict dict;
  std::vector<MemeRecord> records;
  std::optional<ImageEmbeddingMap> images;
  PreparedData data;
  std::optional<EmbeddingTable> semantic;
  std::optional<EmbeddingTable> sentiment;
  json inputs = json::object();
};

Session OpenSession(const TrainArgs& a) {
  Session s;
  KeyValues kv = LoadConfigFile(a.config);
  s.model = ModelConfig::FromKeyValues(kv);
  s.train = TrainConfig::FromKeyValues(kv);
  s.model.architecture = ParseArchitecture(a.arch);
  s.model.head = ParseHead(a.task);
  if (a.seed) {
    s.model.seed = *a.seed;
    s.train.seed = *a.seed;
  } else if (!kv.count("seed")) {
    s.model.seed = s.train.seed;
  }
  if (a.epochs) s.train.epochs = *a.epochs;
  if (a.learning_rate) s.train.learning_rate = *a.learning_rate;

  auto note_input = [&](const char* key, const std::string& path) {
    s.inputs[key] = {{"path", fs::absolute(path).string()}, {"fnv1a64", FileDigest(path)}};
  };

  const std::string corpus = RequireInput(a.corpus, "corpus");
  note_input("corpus", corpus);
  if (!a.dict.empty()) {
    const std::string dict = RequireInput(a.dict, "contraction dictionary");
    note_input("dict", dict);
    s.dict = ContractionDict::FromFile(dict);
  } else {
    s.dict = ContractionDict::Builtin();
  }

  if (UsesImages(s.model.architecture)) {
    if (a.images.empty()) {
      throw Error(ErrorCode::kMissingModality, ArchitectureName(s.model.architecture) +
                                                   " needs --image-embeddings");
    }
    const std::string images = ResolveInput(a.images);
    if (!fs::exists(images)) throw Error(ErrorCode::kMissingModality, "image embeddings not found: " + a.images);
    note_input("image_embeddings", images);
    s.images = ReadImageEmbeddings(images, static_cast<uint32_t>(s.model.image_dim));
  }

  std::string semantic_path, sentiment_path;
  if (!a.embeddings.empty()) {
    semantic_path = RequireInput(a.embeddings, "embeddings");
    note_input("embeddings", semantic_path);
    s.model.d_semantic = DetectVectorDim(semantic_path);
  }
  if (!a.sentiment_embeddings.empty()) {
    sentiment_path = RequireInput(a.sentiment_embeddings, "sentiment embeddings");
    note_input("sentiment_embeddings", sentiment_path);
    s.model.d_sentiment = DetectVectorDim(sentiment_path);
  }

  s.records = LoadCorpus(corpus, LabelSchema::For(HeadTask(s.model.head))).records;
  s.data = PrepareData(s.records, s.model, s.train, s.images ? &*s.images : nullptr, s.dict);
  ValidateConfig(s.model);
  if (!semantic_path.empty()) {
    s.semantic = LoadWordVectors(semantic_path, s.data.vocab, s.model.d_semantic, EmbeddingFamily::kSemantic,
                                 DeriveSeed(s.model.seed, 0x73656d));
  }
  if (!sentiment_path.empty()) {
    s.sentiment = LoadWordVectors(sentiment_path, s.data.vocab, s.model.d_sentiment,
                                  EmbeddingFamily::kSentimentSpecific, DeriveSeed(s.model.seed, 0x73656e74));
  }
  return s;
}

json ReportJson(const TrainReport& report, const std::vector<Example>& dev) {
  json j = json::parse(report.ToJson());
  json ids = json::array();
  for (const Example& ex : dev) ids.push_back(ex.id);
  j["dev_ids"] = ids;
  return j;
}

json ArgsJson(const TrainArgs& a) {
  return {{"corpus", a.corpus},
          {"task", a.task},
          {"arch", a.arch},
          {"embeddings", a.embeddings},
          {"sentiment_embeddings", a.sentiment_embeddings},
          {"image_embeddings", a.images},
          {"dict", a.dict}};
}

int CmdTrain(TrainArgs a, std::ostream& out, std::ostream& err) {
  json replay;
  if (!a.manifest.empty()) {
    replay = json::parse(binio::ReadFile(RequireInput(a.manifest, "manifest")));
    const json& args = replay.at("args");
    a.corpus = replay.at("inputs").at("corpus").at("path");
    a.task = args.at("task");
    a.arch = args.at("arch");
    auto input_path = [&](const char* key) -> std::string {
      return replay["inputs"].contains(key) ? replay["inputs"][key]["path"].get<std::string>() : "";
    };
    a.embeddings = input_path("embeddings");
    a.sentiment_embeddings = input_path("sentiment_embeddings");
    a.images = input_path("image_embeddings");
    a.dict = input_path("dict");
    a.config.clear();
    if (a.out.empty()) a.out = replay.at("artifacts").at("checkpoint");
    a.seed.reset();
    a.epochs.reset();
    a.learning_rate.reset();
  }
  if (a.out.empty()) throw Error(ErrorCode::kInvalidArgument, "--out is required");

  TrainArgs effective = a;
  if (!replay.is_null()) {
    // Configuration comes from the manifest snapshot, not from files.
    KeyValues kv;
    for (const auto& [k, v] : replay.at("model_config").items()) kv[k] = v.get<std::string>();
    for (const auto& [k, v] : replay.at("train_config").items()) kv[k] = v.get<std::string>();
    std::string tmp = a.out + ".replay.cfg";
    kv.erase("vocab_size");
    WriteText(tmp, FormatKeyValues(kv));
    effective.config = tmp;
  }
  Session s = OpenSession(effective);
  if (!effective.config.empty() && !replay.is_null()) fs::remove(effective.config);

  if (!replay.is_null()) {
    for (const auto& [key, entry] : replay.at("inputs").items()) {
      if (!s.inputs.contains(key) || s.inputs[key]["fnv1a64"] != entry.at("fnv1a64")) {
        throw Error(ErrorCode::kCorruptFile, "input '" + key + "' changed since the manifest was written");
      }
    }
  }

  MemeClassifier initial(s.model, s.semantic ? &*s.semantic : nullptr, s.sentiment ? &*s.sentiment : nullptr);
  TrainResult result = Train(initial, s.data.train, s.data.dev, s.train);
  SaveCheckpoint(result.model, s.data.vocab, a.out);

  const std::string report_path = a.report.empty() ? a.out + ".report.json" : a.report;
  WriteText(report_path, ReportJson(result.report, s.data.dev).dump(2) + "\n");

  json manifest;
  manifest["tool_version"] = kToolVersion;
  manifest["command"] = "train";
  manifest["seed"] = s.train.seed;
  manifest["args"] = ArgsJson(a);
  json mc = json::object(), tc = json::object();
  for (const auto& [k, v] : s.model.ToKeyValues()) mc[k] = v;
  for (const auto& [k, v] : s.train.ToKeyValues()) tc[k] = v;
  manifest["model_config"] = mc;
  manifest["train_config"] = tc;
  manifest["inputs"] = s.inputs;
  manifest["artifacts"] = {{"checkpoint", fs::absolute(a.out).string()},
                           {"checkpoint_fnv1a64", FileDigest(a.out)},
                           {"report", fs::absolute(report_path).string()}};
  const std::string manifest_path = a.out + ".manifest.json";
  WriteText(manifest_path, manifest.dump(2) + "\n");

  const size_t best = result.report.best_epoch;
  out << "trained " << ArchitectureName(s.model.architecture) << " for " << HeadName(s.model.head) << ": "
      << s.data.train.size() << " train / " << s.data.dev.size() << " dev examples, best epoch " << best
      << ", dev macro F1 " << result.report.dev_macro_f1[best - 1] << "\n"
      << "checkpoint " << a.out << " (fnv1a64 " << manifest["artifacts"]["checkpoint_fnv1a64"].get<std::string>()
      << ")\n";
  if (s.data.skipped_unlabeled) err << "note: " << s.data.skipped_unlabeled << " records lacked the label\n";
  return kExitOk;
}

int CmdGridSearch(const TrainArgs& a, std::ostream& out) {
  if (a.out.empty()) throw Error(ErrorCode::kInvalidArgument, "--out is required");
  Session s = OpenSession(a);
  GridResult grid = GridSearch(s.model, s.semantic ? &*s.semantic : nullptr, s.sentiment ? &*s.sentiment : nullptr,
                               s.data.train, s.data.dev, s.train, a.threads);
  SaveCheckpoint(grid.best->model, s.data.vocab, a.out);
  const std::string report_path = a.report.empty() ? a.out + ".grid.json" : a.report;
  WriteText(report_path, grid.ToJson() + "\n");
  const GridCellResult& best = grid.cells[grid.best_index];
  out << "grid of " << grid.cells.size() << " cells; best: lstm_layers=" << best.cell.lstm_layers
      << " epochs=" << best.cell.epochs << " learning_rate=" << FormatDouble(best.cell.learning_rate)
      << " dev macro F1 " << best.dev_macro_f1 << "\n";
  return kExitOk;
}

// -------------------------------------------------------------- predict --

int CmdPredict(const std::vector<std::string>& checkpoints, const std::string& corpus_path,
               const std::string& images_path, const std::string& dict_path, const std::string& out_path,
               std::ostream& out) {
  std::vector<TrainedModel> loaded;
  loaded.reserve(checkpoints.size());
  bool needs_images = false;
  for (const std::string& c : checkpoints) {
    loaded.push_back(LoadCheckpoint(RequireInput(c, "checkpoint")));
    needs_images |= UsesImages(loaded.back().model.config().architecture);
  }
  std::map<Head, const TrainedModel*> models;
  for (const TrainedModel& m : loaded) {
    if (!models.emplace(m.model.config().head, &m).second) {
      throw Error(ErrorCode::kInvalidArgument, "two checkpoints for head " + HeadName(m.model.config().head));
    }
  }
  std::optional<ImageEmbeddingMap> images;
  if (needs_images) {
    const std::string p = ResolveInput(images_path);
    if (images_path.empty() || !fs::exists(p)) {
      throw Error(ErrorCode::kMissingModality, "a checkpoint needs --image-embeddings");
    }
    uint32_t dim = 0;
    for (const TrainedModel& m : loaded) {
      if (UsesImages(m.model.config().architecture)) dim = static_cast<uint32_t>(m.model.config().image_dim);
    }
    images = ReadImageEmbeddings(p, dim);
  }
  const ContractionDict dict =
      dict_path.empty() ? ContractionDict::Builtin() : ContractionDict::FromFile(RequireInput(dict_path, "dict"));
  const Corpus corpus = LoadCorpus(RequireInput(corpus_path, "corpus"), LabelSchema::None());

  std::ostringstream csv;
  WriteCsvRow(csv, kPredictionColumns);
  for (const MemeRecord& r : corpus.records) {
    std::map<std::string, std::string> cells;
    for (const auto& [head, probs] : PredictHeads(r, models, images ? &*images : nullptr, dict)) {
      const std::string col = HeadColumn(head);
      // Task B's motivational flag takes precedence over Task C's copy.
      if (head == Head::kCMotivational && models.count(Head::kBMotivational)) continue;
      cells[col] = FormatHeadValue(head, Argmax(probs));
    }
    CsvRow row = {r.id};
    for (size_t i = 1; i < kPredictionColumns.size(); ++i) row.push_back(cells[kPredictionColumns[i]]);
    WriteCsvRow(csv, row);
  }
  WriteText(out_path, csv.str());
  out << "wrote " << corpus.records.size() << " predictions to " << out_path << "\n";
  return kExitOk;
}

// ------------------------------------------------------------- evaluate --

std::map<std::string, std::map<std::string, std::string>> ReadTable(const std::string& path) {
  std::ifstream in(RequireInput(path, "CSV"), std::ios::binary);
  std::vector<CsvRow> rows = ReadCsv(in);
  if (rows.empty()) throw Error(ErrorCode::kMissingColumn, path + " has no header");
  const CsvRow& header = rows[0];
  auto id_col = std::find(header.begin(), header.end(), "id");
  if (id_col == header.end()) throw Error(ErrorCode::kMissingColumn, path + " lacks an id column");
  std::map<std::string, std::map<std::string, std::string>> table;
  for (size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() == 1 && rows[r][0].empty()) continue;
    if (rows[r].size() != header.size()) {
      throw Error(ErrorCode::kCorruptFile, path + " row " + std::to_string(r) + " has the wrong field count");
    }
    std::map<std::string, std::string> fields;
    for (size_t c = 0; c < header.size(); ++c) fields[header[c]] = rows[r][c];
    const std::string id = fields["id"];
    if (!table.emplace(id, std::move(fields)).second) {
      throw Error(ErrorCode::kDuplicateId, path + " repeats id '" + id + "'");
    }
  }
  return table;
}

int CmdEvaluate(const std::string& gold_path, const std::string& pred_path, const std::string& task,
                bool exclude_motivational, bool as_json, std::ostream& out) {
  const std::vector<Head> heads = ParseTaskOrHead(task, exclude_motivational);
  const auto gold = ReadTable(gold_path);
  const auto pred = ReadTable(pred_path);
  if (gold.size() != pred.size()) {
    throw Error(ErrorCode::kLengthMismatch, "gold has " + std::to_string(gold.size()) + " rows, predictions " +
                                                std::to_string(pred.size()));
  }

  json j;
  j["task"] = task;
  j["heads"] = json::object();
  std::vector<ScoreCard> cards;
  std::ostringstream text;
  text << std::fixed << std::setprecision(4);
  for (Head head : heads) {
    const std::string col = HeadColumn(head);
    std::vector<int> g, p;
    for (const auto& [id, fields] : gold) {
      auto pit = pred.find(id);
      if (pit == pred.end()) throw Error(ErrorCode::kLengthMismatch, "no prediction for id '" + id + "'");
      auto gv = fields.find(col);
      auto pv = pit->second.find(col);
      if (gv == fields.end() || pv == pit->second.end()) {
        throw Error(ErrorCode::kMissingColumn, "column '" + col + "' missing");
      }
      auto gi = ParseHeadValue(head, gv->second);
      auto pi = ParseHeadValue(head, pv->second);
      if (!gi || !pi) {
        throw Error(ErrorCode::kClassOutOfRange, "unreadable " + col + " label for id '" + id + "'");
      }
      g.push_back(*gi);
      p.push_back(*pi);
    }
    const ScoreCard card = Score(Confusion(g, p, static_cast<size_t>(ClassCount(head))));
    cards.push_back(card);

    json per_class = json::array();
    text << HeadName(head) << "\n";
    text << "  " << std::left << std::setw(20) << "class" << std::right << std::setw(10) << "precision"
         << std::setw(10) << "recall" << std::setw(10) << "f1" << std::setw(9) << "support" << "\n";
    for (size_t c = 0; c < card.per_class.size(); ++c) {
      const ClassScore& cs = card.per_class[c];
      const std::string& name = ClassNames(head)[c];
      text << "  " << std::left << std::setw(20) << name << std::right << std::setw(10) << cs.precision
           << std::setw(10) << cs.recall << std::setw(10) << cs.f1 << std::setw(9) << cs.support << "\n";
      per_class.push_back(
          {{"class", name}, {"precision", cs.precision}, {"recall", cs.recall}, {"f1", cs.f1}, {"support", cs.support}});
    }
    text << "  macro F1 " << card.macro_f1 << "  micro F1 " << card.micro_f1 << "\n";
    j["heads"][HeadName(head)] = {{"macro_f1", card.macro_f1}, {"micro_f1", card.micro_f1}, {"per_class", per_class}};
  }
  if (heads.size() > 1) {
    j["task_macro_f1"] = TaskBCScore(cards);
    j["task_micro_f1"] = TaskBCMicro(cards);
    text << "task average macro F1 " << TaskBCScore(cards) << "  micro F1 " << TaskBCMicro(cards) << "\n";
  }
  out << (as_json ? j.dump(2) + "\n" : text.str());
  return kExitOk;
}

// ---------------------------------------------------------------- stats --

int CmdStats(const std::string& corpus_path, bool as_json, std::ostream& out) {
  const Corpus corpus = LoadCorpus(RequireInput(corpus_path, "corpus"), LabelSchema::None());
  json j;
  j["records"] = corpus.records.size();
  json skipped = json::array();
  for (const RowIssue& issue : corpus.skipped) {
    skipped.push_back({{"line", issue.line}, {"id", issue.id}, {"reason", issue.reason}});
  }
  j["skipped"] = skipped;
  j["heads"] = json::object();

  std::ostringstream text;
  text << "records " << corpus.records.size() << ", skipped " << corpus.skipped.size() << "\n";
  for (Head head : kAllHeads) {
    std::vector<size_t> counts(static_cast<size_t>(ClassCount(head)), 0);
    size_t labeled = 0;
    for (const MemeRecord& r : corpus.records) {
      if (auto l = HeadLabel(r.labels, head)) {
        ++counts[static_cast<size_t>(*l)];
        ++labeled;
      }
    }
    if (!labeled) continue;
    json h = json::object();
    text << std::left << std::setw(16) << HeadName(head);
    for (size_t c = 0; c < counts.size(); ++c) {
      h[ClassNames(head)[c]] = counts[c];
      text << std::left << std::setw(22) << (ClassNames(head)[c] + "=" + std::to_string(counts[c]));
    }
    text << "\n";
    j["heads"][HeadName(head)] = h;
  }
  for (const RowIssue& issue : corpus.skipped) {
    text << "skipped row " << issue.line << " (" << issue.id << "): " << issue.reason << "\n";
  }
  out << (as_json ? j.dump(2) + "\n" : text.str());
  return kExitOk;
}

// ------------------------------------------------------ small commands --

int CmdNormalize(const std::string& dict_path, const std::string& vocab_path, std::istream& in, std::ostream& out) {
  const ContractionDict dict =
      dict_path.empty() ? ContractionDict::Builtin() : ContractionDict::FromFile(RequireInput(dict_path, "dict"));
  std::optional<WordSet> vocab;
  if (!vocab_path.empty()) {
    std::ifstream v(RequireInput(vocab_path, "vocabulary"));
    vocab = ReadWordSet(v);
  }
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out << JoinTokens(Normalize(line, dict, vocab ? &*vocab : nullptr)) << "\n";
  }
  return kExitOk;
}

int CmdBuildVocab(const std::string& corpus_path, int min_count, const std::string& dict_path,
                  const std::string& out_path, std::ostream& out) {
  const ContractionDict dict =
      dict_path.empty() ? ContractionDict::Builtin() : ContractionDict::FromFile(RequireInput(dict_path, "dict"));
  const Corpus corpus = LoadCorpus(RequireInput(corpus_path, "corpus"), LabelSchema::None());
  std::vector<std::vector<std::string>> captions;
  for (const MemeRecord& r : corpus.records) captions.push_back(Normalize(r.description, dict));
  const VocabIndex vocab = BuildVocab(captions, min_count);
  std::string text;
  for (size_t i = 2; i < vocab.size(); ++i) text += vocab.Token(static_cast<int>(i)) + "\n";
  WriteText(out_path, text);
  out << "wrote " << vocab.size() - 2 << " tokens to " << out_path << "\n";
  return kExitOk;
}

int CmdSynth(const std::string& out_dir, size_t records, uint64_t seed, uint32_t image_dim, std::ostream& out) {
  SyntheticOptions o;
  o.records = records;
  o.seed = seed;
  o.image_dim = image_dim;
  const SyntheticCorpus corpus = MakeSyntheticCorpus(o);
  fs::create_directories(out_dir);
  const std::string csv = (fs::path(out_dir) / "corpus.csv").string();
  const std::string memb = (fs::path(out_dir) / "images.memb").string();
  WriteText(csv, FormatCorpusCsv(corpus.records));
  WriteImageEmbeddings(corpus.images, memb, image_dim);
  out << "wrote " << corpus.records.size() << " records to " << csv << " and " << memb << "\n";
  return kExitOk;
}

void AddTrainOptions(CLI::App* cmd, TrainArgs& a, bool replayable) {
  auto* corpus = cmd->add_option("--corpus", a.corpus, "corpus CSV");
  if (!replayable) corpus->required();
  cmd->add_option("--task", a.task, "head: A, B-humour, ..., C-motivational")->capture_default_str();
  cmd->add_option("--arch", a.arch, "bilstm, mnn1 or mnn2")->capture_default_str();
  cmd->add_option("--embeddings", a.embeddings, "semantic word vectors (GloVe text format)");
  cmd->add_option("--sentiment-embeddings", a.sentiment_embeddings, "sentiment-specific word vectors");
  cmd->add_option("--image-embeddings", a.images, "MEMB image embedding file");
  cmd->add_option("--dict", a.dict, "contraction dictionary TSV (default: built in)");
  cmd->add_option("--config", a.config, "key = value configuration file");
  cmd->add_option("--seed", a.seed, "seed for every random choice");
  cmd->add_option("--epochs", a.epochs, "override epochs");
  cmd->add_option("--learning-rate", a.learning_rate, "override learning rate");
  cmd->add_option("--out", a.out, "checkpoint path");
  cmd->add_option("--report", a.report, "report JSON path");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multimodal meme sentiment toolkit", "memotion"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string dict, vocab_path, corpus, out_path, gold, pred, task = "A", images, out_dir;
  bool as_json = false, exclude_motivational = false;
  int min_count = 1;
  size_t records = 60;
  uint64_t seed = 2020;
  uint32_t image_dim = kImageEmbeddingDim;
  std::vector<std::string> checkpoints;
  TrainArgs train_args, grid_args;

  auto* normalize = app.add_subcommand("normalize", "normalize text lines from stdin");
  normalize->add_option("--dict", dict, "contraction dictionary TSV");
  normalize->add_option("--vocab", vocab_path, "word list used to resolve elongations");

  auto* stats = app.add_subcommand("stats", "label histograms of a corpus");
  stats->add_option("--corpus", corpus, "corpus CSV")->required();
  stats->add_flag("--json", as_json, "machine-readable output");

  auto* build_vocab = app.add_subcommand("build-vocab", "write the corpus vocabulary");
  build_vocab->add_option("--corpus", corpus, "corpus CSV")->required();
  build_vocab->add_option("--min-count", min_count, "minimum token frequency")->capture_default_str();
  build_vocab->add_option("--dict", dict, "contraction dictionary TSV");
  build_vocab->add_option("--out", out_path, "output word list")->required();

  auto* train = app.add_subcommand("train", "train one head");
  AddTrainOptions(train, train_args, true);
  train->add_option("--manifest", train_args.manifest, "rerun from a run manifest");

  auto* grid = app.add_subcommand("gridsearch", "grid search over layers, epochs and learning rate");
  AddTrainOptions(grid, grid_args, false);
  grid->add_option("--threads", grid_args.threads, "worker threads")->capture_default_str();

  auto* predict = app.add_subcommand("predict", "predict labels with one checkpoint per head");
  predict->add_option("--checkpoint", checkpoints, "checkpoint (repeatable)")->required();
  predict->add_option("--corpus", corpus, "corpus CSV")->required();
  predict->add_option("--image-embeddings", images, "MEMB image embedding file");
  predict->add_option("--dict", dict, "contraction dictionary TSV");
  predict->add_option("--out", out_path, "prediction CSV")->required();

  auto* evaluate = app.add_subcommand("evaluate", "score predictions against gold labels");
  evaluate->add_option("--gold", gold, "gold corpus CSV")->required();
  evaluate->add_option("--pred", pred, "prediction CSV")->required();
  evaluate->add_option("--task", task, "A, B, C or a single head")->capture_default_str();
  evaluate->add_flag("--exclude-motivational", exclude_motivational, "drop motivational from B/C averages");
  evaluate->add_flag("--json", as_json, "machine-readable output");

  auto* synth = app.add_subcommand("synth", "write a synthetic multimodal corpus");
  synth->add_option("--out-dir", out_dir, "output directory")->required();
  synth->add_option("--records", records, "record count")->capture_default_str();
  synth->add_option("--seed", seed, "seed")->capture_default_str();
  synth->add_option("--image-dim", image_dim, "image embedding width")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }

  try {
    if (normalize->parsed()) return CmdNormalize(dict, vocab_path, in, out);
    if (stats->parsed()) return CmdStats(corpus, as_json, out);
    if (build_vocab->parsed()) return CmdBuildVocab(corpus, min_count, dict, out_path, out);
    if (train->parsed()) {
      if (train_args.manifest.empty() && train_args.corpus.empty()) {
        err << "error: train needs --corpus or --manifest\n";
        return kExitBadArgs;
      }
      return CmdTrain(train_args, out, err);
    }
    if (grid->parsed()) return CmdGridSearch(grid_args, out);
    if (predict->parsed()) return CmdPredict(checkpoints, corpus, images, dict, out_path, out);
    if (evaluate->parsed()) return CmdEvaluate(gold, pred, task, exclude_motivational, as_json, out);
    if (synth->parsed()) return CmdSynth(out_dir, records, seed, image_dim, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const json::exception& e) {
    err << "error: malformed manifest: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitBadArgs;
}

}  // namespace memotion
