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

#include "bibliotext/csv.hpp"

#include <charconv>

namespace bibliotext::csv {

namespace {

bool IsBlank(std::string_view raw) {
  for (char c : raw) {
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

std::string_view StripCr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

std::vector<std::string> SplitLiteral(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t next = line.find(delimiter, start);
    if (next == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, next - start));
    start = next + 1;
  }
  return fields;
}

std::vector<Row> Parse(std::string_view text, char delimiter, bool quoting) {
  std::vector<Row> rows;
  std::size_t pos = 0;
  std::size_t line = 1;

  if (!quoting) {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      const std::string_view raw = StripCr(text.substr(pos, end - pos));
      if (!IsBlank(raw)) {
        rows.push_back({SplitLiteral(raw, delimiter), raw, line});
      }
      pos = end + 1;
      ++line;
    }
    return rows;
  }

  while (pos < text.size()) {
    const std::size_t row_start = pos;
    const std::size_t row_line = line;
    Row row;
    std::string field;
    bool in_quotes = false;
    bool done = false;
    while (!done) {
      if (pos >= text.size()) {
        row.fields.push_back(std::move(field));
        done = true;
        break;
      }
      const char c = text[pos];
      if (in_quotes) {
        if (c == '"') {
          if (pos + 1 < text.size() && text[pos + 1] == '"') {
            field.push_back('"');
            pos += 2;
          } else {
            in_quotes = false;
            ++pos;
          }
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
          ++pos;
        }
        continue;
      }
      if (c == '"') {
        in_quotes = true;
        ++pos;
      } else if (c == delimiter) {
        row.fields.push_back(std::move(field));
        field.clear();
        ++pos;
      } else if (c == '\n' || c == '\r') {
        row.fields.push_back(std::move(field));
        if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
        ++pos;
        ++line;
        done = true;
      } else {
        field.push_back(c);
        ++pos;
      }
    }
    std::size_t raw_end = pos;
    while (raw_end > row_start &&
           (text[raw_end - 1] == '\n' || text[raw_end - 1] == '\r')) {
      --raw_end;
    }
    row.raw = text.substr(row_start, raw_end - row_start);
    row.line = row_line;
    if (!IsBlank(row.raw)) rows.push_back(std::move(row));
  }
  return rows;
}

std::string Escape(std::string_view field, char delimiter) {
  const bool needs_quotes =
      field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) !=
      std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void AppendRow(std::string& out, std::span<const std::string> fields,
               char delimiter) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(delimiter);
    out += Escape(fields[i], delimiter);
  }
  out.push_back('\n');
}

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return ec == std::errc() ? std::string(buffer, end) : std::string("nan");
}

}  // namespace bibliotext::csv
