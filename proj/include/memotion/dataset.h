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

// Meme corpus records, the three-task label schema, splitting and
// oversampling.

#ifndef MEMOTION_DATASET_H_
#define MEMOTION_DATASET_H_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "memotion/embeddings.h"

namespace memotion {

enum class Sentiment { kPositive, kNeutral, kNegative };
enum class HumourScale { kNotFunny, kFunny, kVeryFunny, kHilarious };
enum class SarcasmScale { kNotSarcastic, kGeneral, kTwistedMeaning, kVeryTwisted };
enum class OffenseScale { kNotOffensive, kSlight, kVeryOffensive, kHatefulOffensive };
enum class Motivation { kNotMotivational, kMotivational };

struct TaskBLabels {
  bool humorous = false;
  bool sarcastic = false;
  bool offensive = false;
  bool motivational = false;
  bool operator==(const TaskBLabels&) const = default;
};

struct TaskCLabels {
  HumourScale humour = HumourScale::kNotFunny;
  SarcasmScale sarcasm = SarcasmScale::kNotSarcastic;
  OffenseScale offense = OffenseScale::kNotOffensive;
  Motivation motivation = Motivation::kNotMotivational;
  bool operator==(const TaskCLabels&) const = default;
};

struct MemeLabels {
  std::optional<Sentiment> sentiment;
  std::optional<TaskBLabels> b;
  std::optional<TaskCLabels> c;
  bool operator==(const MemeLabels&) const = default;
};

struct MemeRecord {
  std::string id;
  std::string image_ref;
  std::string description;
  MemeLabels labels;
  bool operator==(const MemeRecord&) const = default;
};

enum class Task { kA, kB, kC };

// One classifier output: Task A, or one column of Task B / Task C.
enum class Head {
  kA,
  kBHumour,
  kBSarcasm,
  kBOffense,
  kBMotivational,
  kCHumour,
  kCSarcasm,
  kCOffense,
  kCMotivational,
};

inline constexpr std::array<Head, 9> kAllHeads = {
    Head::kA,      Head::kBHumour,  Head::kBSarcasm,  Head::kBOffense,      Head::kBMotivational,
    Head::kCHumour, Head::kCSarcasm, Head::kCOffense, Head::kCMotivational};

int ClassCount(Head head);
Task HeadTask(Head head);
// "A", "B-humour", ..., "C-motivational".
std::string HeadName(Head head);
Head ParseHead(std::string_view name);
// Canonical lowercase class names in class-index order.
const std::vector<std::string>& ClassNames(Head head);
// Class index of `record` for `head`, or nullopt when those labels are absent.
std::optional<int> HeadLabel(const MemeLabels& labels, Head head);
// Writes class `cls` of `head` into `labels`, creating the task block if needed.
void SetHeadLabel(MemeLabels& labels, Head head, int cls);
std::vector<Head> HeadsOfTask(Task task);

// Case-insensitive label parsing; spaces, '-' and '_' are ignored.
std::optional<Sentiment> ParseSentiment(std::string_view s);
std::optional<bool> ParseFlag(std::string_view s);
std::optional<HumourScale> ParseHumourScale(std::string_view s);
std::optional<SarcasmScale> ParseSarcasmScale(std::string_view s);
std::optional<OffenseScale> ParseOffenseScale(std::string_view s);

// Reason string when Task B flags disagree with Task C scales
// (humorous == false iff humour == NotFunny, and so on).
std::optional<std::string> CheckBCConsistency(const MemeLabels& labels);

struct LabelSchema {
  bool task_a = false;
  bool task_b = false;
  bool task_c = false;

  static LabelSchema None() { return {}; }
  static LabelSchema All() { return {true, true, true}; }
  static LabelSchema For(Task task);
};

struct RowIssue {
  size_t line = 0;  // 1-based data row number (header excluded)
  std::string id;
  std::string reason;
};

struct Corpus {
  std::vector<MemeRecord> records;
  std::vector<RowIssue> skipped;
};

// Columns: id,image,description plus the label columns needed by `schema`
// (sentiment; humorous,sarcastic,offensive,motivational;
// humour_scale,sarcasm_scale,offense_scale,motivational). Label columns not
// required by the schema are still parsed when present. Rows with
// unmappable labels, duplicate ids, or B/C disagreements are skipped and
// reported. Throws MissingColumn, EmptyCorpus, UnreadableFile.
Corpus ParseCorpus(std::string_view csv_text, LabelSchema schema);
Corpus LoadCorpus(const std::string& path, LabelSchema schema);
std::string FormatCorpusCsv(const std::vector<MemeRecord>& records);

struct Split {
  std::vector<MemeRecord> train;
  std::vector<MemeRecord> dev;
};

// |dev| = dev_fraction * |records| rounded half-to-even.
Split SplitTrainDev(const std::vector<MemeRecord>& records, double dev_fraction, uint64_t seed);

using LabelProjector = std::function<int(const MemeRecord&)>;

// Appends seeded uniform duplicates of every non-majority class until all
// classes match the majority count. Originals come first, unchanged.
std::vector<MemeRecord> OversampleMinority(const std::vector<MemeRecord>& records,
                                           const LabelProjector& project, uint64_t seed);
std::vector<MemeRecord> OversampleMinority(const std::vector<MemeRecord>& records, Head head,
                                           uint64_t seed);

// Counts per class index; throws InvalidArgument if a record lacks the head.
std::vector<size_t> ClassDistribution(const std::vector<MemeRecord>& records, Head head);

struct TokenSequence {
  std::vector<int> ids;
  size_t true_length = 0;
  bool operator==(const TokenSequence&) const = default;
};

inline constexpr size_t kDefaultSequenceLength = 75;

// Maps tokens to ids (OOV -> UNK), keeps the first n and right-pads with PAD.
TokenSequence PadOrTruncate(const std::vector<std::string>& tokens, const VocabIndex& vocab,
                            size_t n = kDefaultSequenceLength);

}  // namespace memotion

#endif  // MEMOTION_DATASET_H_
