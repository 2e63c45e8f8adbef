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

#include "bibliotext/keystem.hpp"

#include <algorithm>
#include <unordered_set>

#include "bibliotext/capability.hpp"
#include "bibliotext/csv.hpp"
#include "bibliotext/error.hpp"
#include "bibliotext/utf8.hpp"

namespace bibliotext {

namespace {

std::vector<std::string> ResolveColumns(const Dataset& dataset,
                                        std::vector<std::string> columns) {
  const std::vector<std::string> detected = DetectKeywordColumns(dataset);
  if (columns.empty()) columns = detected;
  if (columns.empty()) {
    throw Error(ErrorCode::kNoKeywordColumns,
                "no keyword columns to transform");
  }
  for (const auto& column : columns) {
    if (std::find(detected.begin(), detected.end(), column) == detected.end()) {
      throw Error(ErrorCode::kUnknownColumn,
                  "'" + column + "' is not a keyword column");
    }
  }
  return columns;
}

// Transforms one cell's keyword list; `lookup` maps a lowercased original.
template <typename Lookup>
std::vector<std::string> TransformCell(const std::vector<std::string>& keywords,
                                       Lookup&& lookup) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& keyword : keywords) {
    std::string modified = lookup(utf8::ToLower(keyword));
    if (modified.empty()) continue;
    if (seen.insert(modified).second) out.push_back(std::move(modified));
  }
  return out;
}

}  // namespace

void KeywordMap::Add(const std::string& original, const std::string& modified) {
  if (index_.contains(original)) return;
  index_.emplace(original, entries_.size());
  entries_.emplace_back(original, modified);
}

const std::string* KeywordMap::Find(std::string_view original) const {
  auto it = index_.find(std::string(original));
  return it == index_.end() ? nullptr : &entries_[it->second].second;
}

std::string KeywordMap::ToCsv() const {
  std::string out = "original,modified\n";
  for (const auto& [original, modified] : entries_) {
    const std::string row[] = {original, modified};
    csv::AppendRow(out, row);
  }
  return out;
}

std::string NormalizeKeyword(std::string_view keyword, Normalization method,
                             const TextResources& resources) {
  const std::string lowered = utf8::ToLower(keyword);
  std::string out;
  std::size_t pos = 0;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    if (!out.empty()) out.push_back(' ');
    out += NormalizeToken(token, method, resources);
    token.clear();
  };
  while (pos < lowered.size()) {
    const std::size_t start = pos;
    if (utf8::IsSpace(utf8::Next(lowered, pos))) {
      flush();
    } else {
      token.append(lowered, start, pos - start);
    }
  }
  flush();
  return out;
}

KeywordStemResult StemKeywords(const Dataset& dataset, Normalization method,
                               std::vector<std::string> columns,
                               const TextResources& resources) {
  if (method != Normalization::kLemmatize && method != Normalization::kStem) {
    throw Error(ErrorCode::kInvalidParams,
                "method must be 'lemmatize' or 'stem'");
  }
  columns = ResolveColumns(dataset, std::move(columns));

  KeywordStemResult result;
  std::vector<BiblioRecord> records = dataset.records();
  for (auto& record : records) {
    for (const auto& column : columns) {
      auto it = record.keyword_fields.find(column);
      if (it == record.keyword_fields.end()) continue;
      it->second = TransformCell(it->second, [&](const std::string& lowered) {
        if (const std::string* known = result.map.Find(lowered)) return *known;
        std::string modified = NormalizeKeyword(lowered, method, resources);
        result.map.Add(lowered, modified);
        return modified;
      });
    }
  }
  result.dataset = dataset.WithRecords(std::move(records));
  return result;
}

Dataset ReplayKeywordMap(const Dataset& dataset, const KeywordMap& map,
                         const std::vector<std::string>& columns) {
  std::vector<BiblioRecord> records = dataset.records();
  for (auto& record : records) {
    for (const auto& column : columns) {
      auto it = record.keyword_fields.find(column);
      if (it == record.keyword_fields.end()) continue;
      it->second = TransformCell(it->second, [&](const std::string& lowered) {
        const std::string* modified = map.Find(lowered);
        return modified ? *modified : lowered;
      });
    }
  }
  return dataset.WithRecords(std::move(records));
}

}  // namespace bibliotext
