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

#ifndef BIBLIOTEXT_KEYSTEM_HPP_
#define BIBLIOTEXT_KEYSTEM_HPP_

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bibliotext/ingest.hpp"
#include "bibliotext/textprep.hpp"

namespace bibliotext {

// Every distinct (lowercased) original keyword and what it became, in
// first-occurrence order over rows, then columns.
class KeywordMap {
 public:
  // Keeps the first mapping recorded for `original`.
  void Add(const std::string& original, const std::string& modified);

  const std::string* Find(std::string_view original) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }

  // Two-column CSV with header "original,modified".
  std::string ToCsv() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct KeywordStemResult {
  Dataset dataset;
  KeywordMap map;
};

// One keyword: lowercase, normalize each whitespace token, rejoin with
// single spaces.
std::string NormalizeKeyword(std::string_view keyword, Normalization method,
                             const TextResources& resources);

// `method` must be kLemmatize or kStem. Empty `columns` selects every
// detected keyword column. Throws Error(kNoKeywordColumns),
// Error(kUnknownColumn), Error(kInvalidParams).
KeywordStemResult StemKeywords(const Dataset& dataset, Normalization method,
                               std::vector<std::string> columns,
                               const TextResources& resources);

// Rebuilds the transformed dataset from the map alone.
Dataset ReplayKeywordMap(const Dataset& dataset, const KeywordMap& map,
                         const std::vector<std::string>& columns);

}  // namespace bibliotext

#endif  // BIBLIOTEXT_KEYSTEM_HPP_
