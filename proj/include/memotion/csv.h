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

#ifndef MEMOTION_CSV_H_
#define MEMOTION_CSV_H_

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace memotion {

using CsvRow = std::vector<std::string>;

// RFC 4180 style: comma separated, '"' quoting with "" escapes, quoted
// fields may span lines. Accepts LF or CRLF line endings. Throws
// Error(kCorruptFile) on an unterminated quote.
std::vector<CsvRow> ReadCsv(std::istream& in);

// Quotes a field only when it contains a comma, quote, or newline.
std::string CsvEscape(std::string_view field);
void WriteCsvRow(std::ostream& out, const CsvRow& row);

}  // namespace memotion

#endif  // MEMOTION_CSV_H_
