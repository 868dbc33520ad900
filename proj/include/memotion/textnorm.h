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

// Rule-based normalization of meme descriptions into lowercase word tokens.
//
// The individual stages are exposed so they can be tested in isolation;
// Normalize() composes them in the order
//   usernames -> hashtags -> URLs -> markup/glyphs -> lowercase ->
//   tokenize -> contractions -> elongation.
// Digits produced by hashtag splitting survive the glyph stage, so
// "#10YearChallenge" yields the tokens "10 year challenge".

#ifndef MEMOTION_TEXTNORM_H_
#define MEMOTION_TEXTNORM_H_

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace memotion {

using WordSet = std::unordered_set<std::string>;

// Case-insensitive mapping from an informal surface form to its expansion.
class ContractionDict {
 public:
  ContractionDict() = default;

  // Parses `key<TAB>expansion` lines; blank and '#' lines are skipped.
  // Throws Error(kConfigError) on malformed lines, keys with whitespace,
  // self-mappings or an empty result.
  static ContractionDict Parse(std::string_view text);
  static ContractionDict FromFile(const std::string& path);
  // The dictionary bundled with the library (assets/contractions.tsv).
  static const ContractionDict& Builtin();

  void Add(std::string key, std::string expansion);

  // Expansion tokens for `word`, or nullptr when the word is not a key.
  const std::vector<std::string>* Find(std::string_view word) const;

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, std::vector<std::string>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::vector<std::string>> entries_;
};

std::string StripUrls(std::string_view text);
std::string StripMarkupAndGlyphs(std::string_view text);
std::string ReplaceUsernames(std::string_view text);
std::string SplitHashtag(std::string_view text);

std::vector<std::string> ExpandContractions(const std::vector<std::string>& tokens,
                                            const ContractionDict& dict);

// Runs of three or more identical letters are cut to two; if that form is
// not in `vocab` every run is cut to one. `vocab == nullptr` means no
// vocabulary is available, in which case the fully collapsed form is used.
std::string CollapseElongation(std::string_view token, const WordSet* vocab = nullptr);

std::vector<std::string> Normalize(std::string_view text, const ContractionDict& dict,
                                   const WordSet* vocab = nullptr);

std::string JoinTokens(const std::vector<std::string>& tokens);

// Reads one word per line (first whitespace field), e.g. a vocabulary dump.
WordSet ReadWordSet(std::istream& in);

}  // namespace memotion

#endif  // MEMOTION_TEXTNORM_H_
