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

#include "memotion/textnorm.h"

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include "memotion/error.h"

namespace memotion {

namespace detail {
extern const std::string_view kBuiltinContractions;
}  // namespace detail

namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool IsAlpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool IsLower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool IsUpper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool IsWordChar(char c) { return IsAlpha(c) || IsDigit(c) || c == '_'; }
bool IsAscii(char c) { return static_cast<unsigned char>(c) < 0x80; }
char ToLower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

std::string Lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = ToLower(c);
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsSpace(s[i])) ++i;
    size_t start = i;
    while (i < s.size() && !IsSpace(s[i])) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

bool AtTokenStart(std::string_view s, size_t i) { return i == 0 || IsSpace(s[i - 1]); }

// A piece of the description; hashtag pieces hold the already-split tag body.
struct Segment {
  std::string text;
  bool hashtag = false;
};

std::vector<Segment> SegmentHashtags(std::string_view text) {
  std::vector<Segment> segments;
  std::string plain;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '#' && AtTokenStart(text, i) && i + 1 < text.size() && IsWordChar(text[i + 1])) {
      size_t end = i + 1;
      while (end < text.size() && IsWordChar(text[end])) ++end;
      std::string_view body = text.substr(i + 1, end - i - 1);

      std::vector<std::string> parts;
      std::string cur;
      auto flush = [&] {
        if (!cur.empty()) parts.push_back(std::move(cur));
        cur.clear();
      };
      for (size_t k = 0; k < body.size(); ++k) {
        char c = body[k];
        if (c == '_') {
          flush();
          continue;
        }
        if (!cur.empty()) {
          char prev = cur.back();
          bool digit_edge = IsDigit(prev) != IsDigit(c);
          bool case_edge = IsLower(prev) && IsUpper(c);
          if (digit_edge || case_edge) flush();
        }
        cur.push_back(c);
      }
      flush();

      if (!plain.empty()) segments.push_back({std::move(plain), false});
      plain.clear();
      std::string joined;
      for (size_t k = 0; k < parts.size(); ++k) {
        if (k) joined.push_back(' ');
        joined += parts[k];
      }
      segments.push_back({std::move(joined), true});
      i = end;
    } else {
      plain.push_back(text[i]);
      ++i;
    }
  }
  if (!plain.empty()) segments.push_back({std::move(plain), false});
  return segments;
}

const std::regex& UrlPattern() {
  static const std::regex pattern(
      R"((?:(?:https?|ftp)://|www\.)[^\s]+)"
      R"(|\b[A-Za-z0-9-]+(?:\.[A-Za-z0-9-]+)*\.)"
      R"((?:com|net|org|edu|gov|mil|int|info|biz|io|co|ai|app|dev|xyz|me|tv|ly|gl|gg|us|uk|ca|au|de|fr|es|it|nl|ru|cn|jp|in|br|mx|pl|se|ch|be|at|online|site|blog|news))"
      R"(\b(?:/[^\s]*)?)",
      std::regex::ECMAScript | std::regex::icase);
  return pattern;
}

bool IsTagAt(std::string_view s, size_t i, size_t* end) {
  if (s[i] != '<') return false;
  size_t j = i + 1;
  if (j < s.size() && s[j] == '/') ++j;
  if (j >= s.size() || !IsAlpha(s[j])) return false;
  while (j < s.size() && s[j] != '>' && s[j] != '<') ++j;
  if (j >= s.size() || s[j] != '>') return false;
  *end = j + 1;
  return true;
}

std::string StripGlyphs(std::string_view text, bool keep_digits) {
  std::string ascii;
  ascii.reserve(text.size());
  for (char c : text) {
    if (IsAscii(c)) ascii.push_back(c);
  }

  std::string out;
  out.reserve(ascii.size());
  bool in_run = false;
  size_t i = 0;
  while (i < ascii.size()) {
    size_t tag_end = 0;
    bool strip = false;
    size_t next = i + 1;
    if (IsTagAt(ascii, i, &tag_end)) {
      strip = true;
      next = tag_end;
    } else {
      char c = ascii[i];
      strip = std::ispunct(static_cast<unsigned char>(c)) || (IsDigit(c) && !keep_digits) ||
              (std::iscntrl(static_cast<unsigned char>(c)) && !IsSpace(c));
    }
    if (strip) {
      if (!in_run) out.push_back(' ');
      in_run = true;
    } else {
      out.push_back(ascii[i]);
      in_run = false;
    }
    i = next;
  }
  return out;
}

// "don't" -> "dont", so apostrophe contractions can reach the dictionary.
std::string JoinApostrophes(std::string_view text) {
  static constexpr std::string_view kRightQuote = "\xE2\x80\x99";
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    size_t width = 0;
    if (text[i] == '\'') {
      width = 1;
    } else if (text.substr(i, kRightQuote.size()) == kRightQuote) {
      width = kRightQuote.size();
    }
    if (width && !out.empty() && IsAlpha(out.back()) && i + width < text.size() &&
        IsAlpha(text[i + width])) {
      i += width;
      continue;
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

// Collapses runs of identical letters longer than `max_run` down to `max_run`.
std::string CapRuns(std::string_view token, size_t max_run) {
  std::string out;
  out.reserve(token.size());
  size_t run = 0;
  for (size_t i = 0; i < token.size(); ++i) {
    char c = token[i];
    run = (i > 0 && c == token[i - 1] && IsAlpha(c)) ? run + 1 : 1;
    if (!IsAlpha(c) || run <= max_run) out.push_back(c);
  }
  return out;
}

bool HasRun(std::string_view token, size_t length) {
  size_t run = 0;
  for (size_t i = 0; i < token.size(); ++i) {
    run = (i > 0 && token[i] == token[i - 1] && IsAlpha(token[i])) ? run + 1 : 1;
    if (run >= length) return true;
  }
  return false;
}

}  // namespace

ContractionDict ContractionDict::Parse(std::string_view text) {
  ContractionDict dict;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kConfigError,
                  "contraction line " + std::to_string(line_no) + " has no tab separator");
    }
    dict.Add(line.substr(0, tab), line.substr(tab + 1));
  }
  if (dict.empty()) throw Error(ErrorCode::kConfigError, "contraction dictionary is empty");
  return dict;
}

ContractionDict ContractionDict::FromFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadableFile, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

const ContractionDict& ContractionDict::Builtin() {
  static const ContractionDict dict = Parse(detail::kBuiltinContractions);
  return dict;
}

void ContractionDict::Add(std::string key, std::string expansion) {
  std::string lowered = Lowercase(key);
  if (lowered.empty()) throw Error(ErrorCode::kConfigError, "empty contraction key");
  for (char c : lowered) {
    if (IsSpace(c)) throw Error(ErrorCode::kConfigError, "contraction key contains whitespace: " + key);
  }
  std::vector<std::string> tokens = SplitWhitespace(Lowercase(expansion));
  if (tokens.empty()) throw Error(ErrorCode::kConfigError, "empty expansion for key " + key);
  if (tokens.size() == 1 && tokens[0] == lowered) {
    throw Error(ErrorCode::kConfigError, "contraction key maps to itself: " + key);
  }
  entries_[lowered] = std::move(tokens);
}

const std::vector<std::string>* ContractionDict::Find(std::string_view word) const {
  auto it = entries_.find(Lowercase(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::string StripUrls(std::string_view text) {
  return std::regex_replace(std::string(text), UrlPattern(), "");
}

std::string StripMarkupAndGlyphs(std::string_view text) { return StripGlyphs(text, false); }

std::string ReplaceUsernames(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '@' && AtTokenStart(text, i) && i + 1 < text.size() && IsWordChar(text[i + 1])) {
      size_t end = i + 1;
      while (end < text.size() && IsWordChar(text[end])) ++end;
      out += "USER";
      i = end;
    } else {
      out.push_back(text[i]);
      ++i;
    }
  }
  return out;
}

std::string SplitHashtag(std::string_view text) {
  std::string out;
  for (const Segment& seg : SegmentHashtags(text)) out += seg.text;
  return out;
}

std::vector<std::string> ExpandContractions(const std::vector<std::string>& tokens,
                                            const ContractionDict& dict) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) {
    if (const auto* expansion = dict.Find(token)) {
      out.insert(out.end(), expansion->begin(), expansion->end());
    } else {
      out.push_back(token);
    }
  }
  return out;
}

std::string CollapseElongation(std::string_view token, const WordSet* vocab) {
  if (!HasRun(token, 3)) return std::string(token);
  std::string doubled = CapRuns(token, 2);
  if (vocab != nullptr && vocab->count(Lowercase(doubled))) return doubled;
  return CapRuns(doubled, 1);
}

std::vector<std::string> Normalize(std::string_view text, const ContractionDict& dict,
                                   const WordSet* vocab) {
  std::string with_users = ReplaceUsernames(text);
  std::string cleaned;
  for (const Segment& seg : SegmentHashtags(with_users)) {
    if (seg.hashtag) {
      cleaned += StripGlyphs(seg.text, /*keep_digits=*/true);
    } else {
      cleaned += StripGlyphs(JoinApostrophes(StripUrls(seg.text)), /*keep_digits=*/false);
    }
    // Keep adjacent segments from fusing into one token.
    cleaned.push_back(' ');
  }

  std::vector<std::string> tokens = ExpandContractions(SplitWhitespace(Lowercase(cleaned)), dict);
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) {
    std::string collapsed = CollapseElongation(token, vocab);
    // A collapsed form may itself be a dictionary key ("plzzz" -> "plz").
    const auto* expansion = collapsed != token ? dict.Find(collapsed) : nullptr;
    if (expansion) {
      out.insert(out.end(), expansion->begin(), expansion->end());
    } else {
      out.push_back(std::move(collapsed));
    }
  }
  return out;
}

std::string JoinTokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

WordSet ReadWordSet(std::istream& in) {
  WordSet words;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields = SplitWhitespace(line);
    if (!fields.empty()) words.insert(Lowercase(fields[0]));
  }
  return words;
}

}  // namespace memotion
