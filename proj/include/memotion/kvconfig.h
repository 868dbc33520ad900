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

// Flat `key = value` configuration text. '#' starts a comment line; keys are
// unique; surrounding whitespace is trimmed.

#ifndef MEMOTION_KVCONFIG_H_
#define MEMOTION_KVCONFIG_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace memotion {

using KeyValues = std::map<std::string, std::string>;

KeyValues ParseKeyValues(std::string_view text);
KeyValues ReadKeyValuesFile(const std::string& path);
std::string FormatKeyValues(const KeyValues& kv);

// Typed accessors; absent keys leave `out` untouched, malformed values throw
// Error(kConfigError).
void GetSize(const KeyValues& kv, const std::string& key, size_t& out);
void GetU64(const KeyValues& kv, const std::string& key, uint64_t& out);
void GetDouble(const KeyValues& kv, const std::string& key, double& out);
void GetBool(const KeyValues& kv, const std::string& key, bool& out);
void GetString(const KeyValues& kv, const std::string& key, std::string& out);
std::vector<double> ParseDoubleList(std::string_view text);
std::vector<size_t> ParseSizeList(std::string_view text);
std::string FormatDouble(double v);

}  // namespace memotion

#endif  // MEMOTION_KVCONFIG_H_
