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

#include "memotion/dataset.h"

#include <algorithm>
#include <cctype>
#include <cfenv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "memotion/csv.h"
#include "memotion/error.h"
#include "memotion/random.h"

namespace memotion {

namespace {

std::string Canon(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == ' ' || c == '_' || c == '-' || c == '\t') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

template <typename Enum>
std::optional<Enum> LookupCanon(std::string_view s,
                                std::initializer_list<std::pair<const char*, Enum>> table) {
  std::string key = Canon(s);
  for (const auto& [name, value] : table) {
    if (key == name) return value;
  }
  return std::nullopt;
}

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

int ClassCount(Head head) {
  switch (head) {
    case Head::kA: return 3;
    case Head::kCHumour:
    case Head::kCSarcasm:
    case Head::kCOffense: return 4;
    default: return 2;
  }
}

Task HeadTask(Head head) {
  switch (head) {
    case Head::kA: return Task::kA;
    case Head::kBHumour:
    case Head::kBSarcasm:
    case Head::kBOffense:
    case Head::kBMotivational: return Task::kB;
    default: return Task::kC;
  }
}

std::string HeadName(Head head) {
  switch (head) {
    case Head::kA: return "A";
    case Head::kBHumour: return "B-humour";
    case Head::kBSarcasm: return "B-sarcasm";
    case Head::kBOffense: return "B-offense";
    case Head::kBMotivational: return "B-motivational";
    case Head::kCHumour: return "C-humour";
    case Head::kCSarcasm: return "C-sarcasm";
    case Head::kCOffense: return "C-offense";
    case Head::kCMotivational: return "C-motivational";
  }
  return "?";
}

Head ParseHead(std::string_view name) {
  std::string key = Canon(name);
  for (Head h : kAllHeads) {
    if (Canon(HeadName(h)) == key) return h;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown task head '" + std::string(name) + "'");
}

const std::vector<std::string>& ClassNames(Head head) {
  static const std::vector<std::string> kSentiment = {"positive", "neutral", "negative"};
  static const std::vector<std::string> kFlag = {"0", "1"};
  static const std::vector<std::string> kHumour = {"not_funny", "funny", "very_funny", "hilarious"};
  static const std::vector<std::string> kSarcasm = {"not_sarcastic", "general", "twisted_meaning",
                                                    "very_twisted"};
  static const std::vector<std::string> kOffense = {"not_offensive", "slight", "very_offensive",
                                                    "hateful_offensive"};
  static const std::vector<std::string> kMotivation = {"not_motivational", "motivational"};
  switch (head) {
    case Head::kA: return kSentiment;
    case Head::kCHumour: return kHumour;
    case Head::kCSarcasm: return kSarcasm;
    case Head::kCOffense: return kOffense;
    case Head::kCMotivational: return kMotivation;
    default: return kFlag;
  }
}

std::optional<int> HeadLabel(const MemeLabels& labels, Head head) {
  switch (head) {
    case Head::kA:
      if (!labels.sentiment) return std::nullopt;
      return static_cast<int>(*labels.sentiment);
    case Head::kBHumour: return labels.b ? std::optional<int>(labels.b->humorous) : std::nullopt;
    case Head::kBSarcasm: return labels.b ? std::optional<int>(labels.b->sarcastic) : std::nullopt;
    case Head::kBOffense: return labels.b ? std::optional<int>(labels.b->offensive) : std::nullopt;
    case Head::kBMotivational:
      return labels.b ? std::optional<int>(labels.b->motivational) : std::nullopt;
    case Head::kCHumour:
      return labels.c ? std::optional<int>(static_cast<int>(labels.c->humour)) : std::nullopt;
    case Head::kCSarcasm:
      return labels.c ? std::optional<int>(static_cast<int>(labels.c->sarcasm)) : std::nullopt;
    case Head::kCOffense:
      return labels.c ? std::optional<int>(static_cast<int>(labels.c->offense)) : std::nullopt;
    case Head::kCMotivational:
      return labels.c ? std::optional<int>(static_cast<int>(labels.c->motivation)) : std::nullopt;
  }
  return std::nullopt;
}

void SetHeadLabel(MemeLabels& labels, Head head, int cls) {
  if (cls < 0 || cls >= ClassCount(head)) {
    throw Error(ErrorCode::kClassOutOfRange,
                "class " + std::to_string(cls) + " out of range for head " + HeadName(head));
  }
  if (HeadTask(head) == Task::kB && !labels.b) labels.b.emplace();
  if (HeadTask(head) == Task::kC && !labels.c) labels.c.emplace();
  switch (head) {
    case Head::kA: labels.sentiment = static_cast<Sentiment>(cls); break;
    case Head::kBHumour: labels.b->humorous = cls == 1; break;
    case Head::kBSarcasm: labels.b->sarcastic = cls == 1; break;
    case Head::kBOffense: labels.b->offensive = cls == 1; break;
    case Head::kBMotivational: labels.b->motivational = cls == 1; break;
    case Head::kCHumour: labels.c->humour = static_cast<HumourScale>(cls); break;
    case Head::kCSarcasm: labels.c->sarcasm = static_cast<SarcasmScale>(cls); break;
    case Head::kCOffense: labels.c->offense = static_cast<OffenseScale>(cls); break;
    case Head::kCMotivational: labels.c->motivation = static_cast<Motivation>(cls); break;
  }
}

std::vector<Head> HeadsOfTask(Task task) {
  std::vector<Head> heads;
  for (Head h : kAllHeads) {
    if (HeadTask(h) == task) heads.push_back(h);
  }
  return heads;
}

std::optional<Sentiment> ParseSentiment(std::string_view s) {
  return LookupCanon<Sentiment>(s, {{"positive", Sentiment::kPositive},
                                    {"verypositive", Sentiment::kPositive},
                                    {"neutral", Sentiment::kNeutral},
                                    {"negative", Sentiment::kNegative},
                                    {"verynegative", Sentiment::kNegative},
                                    {"0", Sentiment::kPositive},
                                    {"1", Sentiment::kNeutral},
                                    {"2", Sentiment::kNegative}});
}

std::optional<HumourScale> ParseHumourScale(std::string_view s) {
  return LookupCanon<HumourScale>(
      s, {{"notfunny", HumourScale::kNotFunny}, {"funny", HumourScale::kFunny},
          {"veryfunny", HumourScale::kVeryFunny}, {"hilarious", HumourScale::kHilarious},
          {"0", HumourScale::kNotFunny}, {"1", HumourScale::kFunny},
          {"2", HumourScale::kVeryFunny}, {"3", HumourScale::kHilarious}});
}

std::optional<SarcasmScale> ParseSarcasmScale(std::string_view s) {
  return LookupCanon<SarcasmScale>(
      s, {{"notsarcastic", SarcasmScale::kNotSarcastic}, {"general", SarcasmScale::kGeneral},
          {"twistedmeaning", SarcasmScale::kTwistedMeaning},
          {"verytwisted", SarcasmScale::kVeryTwisted}, {"0", SarcasmScale::kNotSarcastic},
          {"1", SarcasmScale::kGeneral}, {"2", SarcasmScale::kTwistedMeaning},
          {"3", SarcasmScale::kVeryTwisted}});
}

std::optional<OffenseScale> ParseOffenseScale(std::string_view s) {
  return LookupCanon<OffenseScale>(
      s, {{"notoffensive", OffenseScale::kNotOffensive}, {"slight", OffenseScale::kSlight},
          {"slightlyoffensive", OffenseScale::kSlight},
          {"veryoffensive", OffenseScale::kVeryOffensive},
          {"hatefuloffensive", OffenseScale::kHatefulOffensive},
          {"hateful", OffenseScale::kHatefulOffensive}, {"0", OffenseScale::kNotOffensive},
          {"1", OffenseScale::kSlight}, {"2", OffenseScale::kVeryOffensive},
          {"3", OffenseScale::kHatefulOffensive}});
}

std::optional<bool> ParseFlag(std::string_view s) {
  std::string key = Canon(s);
  static const std::set<std::string> kTrue = {"1", "true", "yes", "y", "t", "humorous",
                                               "humourous", "funny", "sarcastic", "offensive",
                                               "motivational"};
  static const std::set<std::string> kFalse = {"0", "false", "no", "n", "f"};
  if (kTrue.count(key)) return true;
  if (kFalse.count(key)) return false;
  if (key.size() > 3 && key.rfind("not", 0) == 0) return false;
  return std::nullopt;
}

std::optional<std::string> CheckBCConsistency(const MemeLabels& labels) {
  if (!labels.b || !labels.c) return std::nullopt;
  const TaskBLabels& b = *labels.b;
  const TaskCLabels& c = *labels.c;
  if (b.humorous != (c.humour != HumourScale::kNotFunny)) return "humorous flag disagrees with humour scale";
  if (b.sarcastic != (c.sarcasm != SarcasmScale::kNotSarcastic)) {
    return "sarcastic flag disagrees with sarcasm scale";
  }
  if (b.offensive != (c.offense != OffenseScale::kNotOffensive)) {
    return "offensive flag disagrees with offense scale";
  }
  if (b.motivational != (c.motivation == Motivation::kMotivational)) {
    return "motivational flag disagrees with motivational class";
  }
  return std::nullopt;
}

LabelSchema LabelSchema::For(Task task) {
  LabelSchema s;
  s.task_a = task == Task::kA;
  s.task_b = task == Task::kB;
  s.task_c = task == Task::kC;
  return s;
}

Corpus ParseCorpus(std::string_view csv_text, LabelSchema schema) {
  std::istringstream in{std::string(csv_text)};
  std::vector<CsvRow> rows = ReadCsv(in);
  if (rows.empty()) throw Error(ErrorCode::kMissingColumn, "corpus has no header row");

  std::map<std::string, size_t> col;
  for (size_t i = 0; i < rows[0].size(); ++i) col[Canon(Trim(rows[0][i]))] = i;
  auto require = [&](const char* name) {
    if (!col.count(Canon(name))) {
      throw Error(ErrorCode::kMissingColumn, std::string("corpus lacks column '") + name + "'");
    }
  };
  require("id");
  require("image");
  require("description");
  if (schema.task_a) require("sentiment");
  if (schema.task_b) {
    for (const char* c : {"humorous", "sarcastic", "offensive", "motivational"}) require(c);
  }
  if (schema.task_c) {
    for (const char* c : {"humour_scale", "sarcasm_scale", "offense_scale", "motivational"}) {
      require(c);
    }
  }
  auto has = [&](const char* name) { return col.count(Canon(name)) != 0; };
  const bool have_a = has("sentiment");
  const bool have_b = has("humorous") && has("sarcastic") && has("offensive") && has("motivational");
  const bool have_c = has("humour_scale") && has("sarcasm_scale") && has("offense_scale") &&
                      has("motivational");

  Corpus corpus;
  std::unordered_set<std::string> seen;
  for (size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    auto cell = [&](const char* name) -> std::string {
      size_t i = col.at(Canon(name));
      return i < row.size() ? Trim(row[i]) : std::string();
    };
    MemeRecord rec;
    rec.id = cell("id");
    rec.image_ref = cell("image");
    size_t desc_col = col.at("description");
    rec.description = desc_col < row.size() ? row[desc_col] : std::string();

    auto skip = [&](std::string reason) { corpus.skipped.push_back({r, rec.id, std::move(reason)}); };
    if (rec.id.empty()) {
      skip("empty id");
      continue;
    }
    if (seen.count(rec.id)) {
      skip("duplicate id");
      continue;
    }

    std::string problem;
    auto parse_block = [&](bool have, bool required, std::initializer_list<const char*> names,
                           auto&& parse) {
      if (!have || !problem.empty()) return;
      bool any = false, all = true;
      for (const char* n : names) {
        bool present = !cell(n).empty();
        any |= present;
        all &= present;
      }
      if (!all) {
        if (required || any) problem = "missing label value";
        return;
      }
      parse();
    };

    parse_block(have_a, schema.task_a, {"sentiment"}, [&] {
      auto v = ParseSentiment(cell("sentiment"));
      if (!v) {
        problem = "unmappable sentiment label '" + cell("sentiment") + "'";
      } else {
        rec.labels.sentiment = *v;
      }
    });
    parse_block(have_b, schema.task_b, {"humorous", "sarcastic", "offensive", "motivational"}, [&] {
      TaskBLabels b;
      std::pair<const char*, bool*> fields[] = {{"humorous", &b.humorous},
                                                {"sarcastic", &b.sarcastic},
                                                {"offensive", &b.offensive},
                                                {"motivational", &b.motivational}};
      for (auto& [name, dst] : fields) {
        auto v = ParseFlag(cell(name));
        if (!v) {
          problem = std::string("unmappable ") + name + " label '" + cell(name) + "'";
          return;
        }
        *dst = *v;
      }
      rec.labels.b = b;
    });
    parse_block(have_c, schema.task_c,
                {"humour_scale", "sarcasm_scale", "offense_scale", "motivational"}, [&] {
                  auto h = ParseHumourScale(cell("humour_scale"));
                  auto s = ParseSarcasmScale(cell("sarcasm_scale"));
                  auto o = ParseOffenseScale(cell("offense_scale"));
                  auto m = ParseFlag(cell("motivational"));
                  if (!h) problem = "unmappable humour_scale label '" + cell("humour_scale") + "'";
                  else if (!s) problem = "unmappable sarcasm_scale label '" + cell("sarcasm_scale") + "'";
                  else if (!o) problem = "unmappable offense_scale label '" + cell("offense_scale") + "'";
                  else if (!m) problem = "unmappable motivational label '" + cell("motivational") + "'";
                  if (!problem.empty()) return;
                  rec.labels.c = TaskCLabels{*h, *s, *o,
                                             *m ? Motivation::kMotivational : Motivation::kNotMotivational};
                });
    if (problem.empty()) {
      if (auto why = CheckBCConsistency(rec.labels)) problem = *why;
    }
    if (!problem.empty()) {
      skip(problem);
      continue;
    }
    seen.insert(rec.id);
    corpus.records.push_back(std::move(rec));
  }
  if (corpus.records.empty()) throw Error(ErrorCode::kEmptyCorpus, "corpus has no valid rows");
  return corpus;
}

Corpus LoadCorpus(const std::string& path, LabelSchema schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadableFile, "cannot open corpus " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseCorpus(buf.str(), schema);
}

std::string FormatCorpusCsv(const std::vector<MemeRecord>& records) {
  std::ostringstream out;
  WriteCsvRow(out, {"id", "image", "description", "sentiment", "humorous", "sarcastic", "offensive",
                    "motivational", "humour_scale", "sarcasm_scale", "offense_scale"});
  for (const MemeRecord& r : records) {
    CsvRow row = {r.id, r.image_ref, r.description};
    auto name = [&](Head h) -> std::string {
      auto v = HeadLabel(r.labels, h);
      return v ? ClassNames(h)[static_cast<size_t>(*v)] : std::string();
    };
    row.push_back(name(Head::kA));
    for (Head h : {Head::kBHumour, Head::kBSarcasm, Head::kBOffense}) row.push_back(name(h));
    if (r.labels.b) {
      row.push_back(name(Head::kBMotivational));
    } else {
      row.push_back(name(Head::kCMotivational));
    }
    for (Head h : {Head::kCHumour, Head::kCSarcasm, Head::kCOffense}) row.push_back(name(h));
    WriteCsvRow(out, row);
  }
  return out.str();
}

Split SplitTrainDev(const std::vector<MemeRecord>& records, double dev_fraction, uint64_t seed) {
  if (!(dev_fraction > 0.0 && dev_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dev_fraction must lie in (0, 1)");
  }
  if (records.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot split an empty record list");

  std::vector<size_t> order(records.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.Shuffle(std::span<size_t>(order));

  // Half-to-even: 0.15 * 6990 == 1048.5 -> 1048.
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const auto dev_count = static_cast<size_t>(std::nearbyint(dev_fraction * static_cast<double>(records.size())));
  std::fesetround(saved);

  Split split;
  split.dev.reserve(dev_count);
  split.train.reserve(records.size() - dev_count);
  for (size_t i = 0; i < order.size(); ++i) {
    (i < dev_count ? split.dev : split.train).push_back(records[order[i]]);
  }
  return split;
}

std::vector<MemeRecord> OversampleMinority(const std::vector<MemeRecord>& records,
                                           const LabelProjector& project, uint64_t seed) {
  std::map<int, std::vector<size_t>> members;
  for (size_t i = 0; i < records.size(); ++i) members[project(records[i])].push_back(i);

  size_t majority = 0;
  for (const auto& [cls, idx] : members) majority = std::max(majority, idx.size());

  std::vector<MemeRecord> out = records;
  Rng rng(seed);
  for (const auto& [cls, idx] : members) {
    for (size_t k = idx.size(); k < majority; ++k) {
      out.push_back(records[idx[rng.Below(idx.size())]]);
    }
  }
  return out;
}

std::vector<MemeRecord> OversampleMinority(const std::vector<MemeRecord>& records, Head head,
                                           uint64_t seed) {
  return OversampleMinority(
      records,
      [head](const MemeRecord& r) {
        auto v = HeadLabel(r.labels, head);
        if (!v) throw Error(ErrorCode::kInvalidArgument, "record " + r.id + " lacks " + HeadName(head) + " label");
        return *v;
      },
      seed);
}

std::vector<size_t> ClassDistribution(const std::vector<MemeRecord>& records, Head head) {
  std::vector<size_t> counts(static_cast<size_t>(ClassCount(head)), 0);
  for (const MemeRecord& r : records) {
    auto v = HeadLabel(r.labels, head);
    if (!v) {
      throw Error(ErrorCode::kInvalidArgument,
                  "record " + r.id + " lacks " + HeadName(head) + " label");
    }
    ++counts[static_cast<size_t>(*v)];
  }
  return counts;
}

TokenSequence PadOrTruncate(const std::vector<std::string>& tokens, const VocabIndex& vocab,
                            size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "sequence length must be >= 1");
  TokenSequence seq;
  seq.true_length = std::min(n, tokens.size());
  seq.ids.assign(n, VocabIndex::kPad);
  for (size_t t = 0; t < seq.true_length; ++t) seq.ids[t] = vocab.Index(tokens[t]);
  return seq;
}

}  // namespace memotion
