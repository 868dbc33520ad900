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

#include "memotion/kvconfig.h"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "memotion/binio.h"
#include "memotion/error.h"

namespace memotion {

namespace {

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

template <typename T>
T ParseNumber(std::string_view text, const std::string& key) {
  std::string s = Trim(text);
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kConfigError, "bad value '" + s + "' for " + key);
  }
  return value;
}

template <typename T>
std::vector<T> ParseList(std::string_view text) {
  std::vector<T> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    if (Trim(item).empty()) continue;
    out.push_back(ParseNumber<T>(item, "list"));
  }
  return out;
}

}  // namespace

KeyValues ParseKeyValues(std::string_view text) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfigError, "config line " + std::to_string(line_no) + " lacks '='");
    }
    std::string key = Trim(t.substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::kConfigError, "empty key on line " + std::to_string(line_no));
    if (!kv.emplace(key, Trim(t.substr(eq + 1))).second) {
      throw Error(ErrorCode::kConfigError, "duplicate key '" + key + "'");
    }
  }
  return kv;
}

KeyValues ReadKeyValuesFile(const std::string& path) { return ParseKeyValues(binio::ReadFile(path)); }

std::string FormatKeyValues(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

void GetSize(const KeyValues& kv, const std::string& key, size_t& out) {
  if (auto it = kv.find(key); it != kv.end()) out = ParseNumber<size_t>(it->second, key);
}

void GetU64(const KeyValues& kv, const std::string& key, uint64_t& out) {
  if (auto it = kv.find(key); it != kv.end()) out = ParseNumber<uint64_t>(it->second, key);
}

void GetDouble(const KeyValues& kv, const std::string& key, double& out) {
  if (auto it = kv.find(key); it != kv.end()) out = ParseNumber<double>(it->second, key);
}

void GetBool(const KeyValues& kv, const std::string& key, bool& out) {
  auto it = kv.find(key);
  if (it == kv.end()) return;
  if (it->second == "true" || it->second == "1") {
    out = true;
  } else if (it->second == "false" || it->second == "0") {
    out = false;
  } else {
    throw Error(ErrorCode::kConfigError, "bad boolean '" + it->second + "' for " + key);
  }
}

void GetString(const KeyValues& kv, const std::string& key, std::string& out) {
  if (auto it = kv.find(key); it != kv.end()) out = it->second;
}

std::vector<double> ParseDoubleList(std::string_view text) { return ParseList<double>(text); }
std::vector<size_t> ParseSizeList(std::string_view text) { return ParseList<size_t>(text); }

std::string FormatDouble(double v) {
  // Shortest representation that round-trips exactly.
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace memotion
