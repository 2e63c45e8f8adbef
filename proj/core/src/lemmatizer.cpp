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

#include "bibliotext/lemmatizer.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "bibliotext/error.hpp"

namespace bibliotext {

namespace {

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

constexpr std::array<Rule, 7> kNounRules = {{
    {"ses", "s"},
    {"ies", "y"},
    {"es", "e"},
    {"es", ""},
    {"s", ""},
    {"ves", "f"},
    {"men", "man"},
}};

constexpr std::array<Rule, 7> kVerbRules = {{
    {"ing", ""},
    {"ing", "e"},
    {"ed", ""},
    {"ed", "e"},
    {"ies", "y"},
    {"es", "e"},
    {"s", ""},
}};

std::ifstream Open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return in;
}

}  // namespace

Lemmatizer Lemmatizer::Load(const std::filesystem::path& data_dir) {
  Lemmatizer lemmatizer;
  {
    auto in = Open(data_dir / "baseforms_en.txt");
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) lemmatizer.AddBaseForm(line);
    }
  }
  for (const bool noun : {true, false}) {
    auto in = Open(data_dir / (noun ? "lemma_exceptions_noun.txt"
                                    : "lemma_exceptions_verb.txt"));
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream fields(line);
      std::string form;
      std::string lemma;
      // Only the first listed lemma is used.
      if (!(fields >> form >> lemma)) continue;
      if (noun) {
        lemmatizer.AddNounException(std::move(form), std::move(lemma));
      } else {
        lemmatizer.AddVerbException(std::move(form), std::move(lemma));
      }
    }
  }
  return lemmatizer;
}

void Lemmatizer::AddBaseForm(std::string word) {
  base_forms_.insert(std::move(word));
}

void Lemmatizer::AddNounException(std::string form, std::string lemma) {
  noun_exceptions_.emplace(std::move(form), std::move(lemma));
}

void Lemmatizer::AddVerbException(std::string form, std::string lemma) {
  verb_exceptions_.emplace(std::move(form), std::move(lemma));
}

bool Lemmatizer::IsBaseForm(std::string_view word) const {
  return base_forms_.contains(std::string(word));
}

std::string Lemmatizer::Lemmatize(std::string_view token) const {
  std::string word(token);
  if (word.empty() || base_forms_.contains(word)) return word;
  if (auto it = noun_exceptions_.find(word); it != noun_exceptions_.end()) {
    return it->second;
  }
  if (auto it = verb_exceptions_.find(word); it != verb_exceptions_.end()) {
    return it->second;
  }
  auto apply = [&](const auto& rules) -> std::string {
    for (const Rule& rule : rules) {
      if (word.size() <= rule.suffix.size() ||
          !word.ends_with(rule.suffix)) {
        continue;
      }
      std::string candidate =
          word.substr(0, word.size() - rule.suffix.size());
      candidate += rule.replacement;
      if (base_forms_.contains(candidate)) return candidate;
    }
    return {};
  };
  if (std::string lemma = apply(kNounRules); !lemma.empty()) return lemma;
  if (std::string lemma = apply(kVerbRules); !lemma.empty()) return lemma;
  return word;
}

}  // namespace bibliotext
