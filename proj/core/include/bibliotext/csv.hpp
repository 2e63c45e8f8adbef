// Copyright 2026 The Bibliotext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BIBLIOTEXT_CSV_HPP_
#define BIBLIOTEXT_CSV_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bibliotext::csv {

struct Row {
  std::vector<std::string> fields;
  // Raw bytes of the row, without the terminating line break. Used to retry
  // a row with quotes taken literally when strict parsing miscounts fields.
  std::string_view raw;
  std::size_t line = 0;  // 1-based line where the row starts
};

// Splits delimited text into rows. With `quoting` the RFC-4180 rules apply
// (double quotes enclose fields, "" escapes a quote, quoted fields may span
// lines); without it every byte other than the delimiter and line breaks is
// literal. Blank lines are skipped. CRLF and LF are both accepted.
std::vector<Row> Parse(std::string_view text, char delimiter, bool quoting);

// Splits a single line with quotes treated as ordinary characters.
std::vector<std::string> SplitLiteral(std::string_view line, char delimiter);

// Quotes a field when it contains the delimiter, a quote or a line break.
std::string Escape(std::string_view field, char delimiter = ',');

void AppendRow(std::string& out, std::span<const std::string> fields,
               char delimiter = ',');

// Shortest decimal text that parses back to exactly `value`.
std::string FormatDouble(double value);

}  // namespace bibliotext::csv

#endif  // BIBLIOTEXT_CSV_HPP_
