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

// Text cleaning, tokenization, stopword removal and token normalization
// shared by every analysis.

#ifndef BIBLIOTEXT_TEXTPREP_HPP_
#define BIBLIOTEXT_TEXTPREP_HPP_

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "bibliotext/ingest.hpp"
#include "bibliotext/lemmatizer.hpp"

namespace bibliotext {

enum class Normalization { kNone, kLemmatize, kStem };

std::string_view NormalizationName(Normalization normalization);
std::optional<Normalization> ParseNormalization(std::string_view name);

struct PrepOptions {
  bool lowercase = true;
  bool remove_punctuation = true;
  bool remove_copyright = false;
  // Lowercased, non-empty. Use SetExtraStopwords to normalize user input.
  std::set<std::string, std::less<>> extra_stopwords;
  Normalization normalization = Normalization::kLemmatize;

  void SetExtraStopwords(const std::vector<std::string>& words);
};

// Bundled stopword list plus the lemmatizer tables.
class TextResources {
 public:
  TextResources() = default;
  TextResources(std::unordered_set<std::string> stopwords, Lemmatizer lemmatizer)
      : stopwords_(std::move(stopwords)), lemmatizer_(std::move(lemmatizer)) {}

  // Reads stopwords_en.txt and the lemmatizer files from `data_dir`.
  static TextResources Load(const std::filesystem::path& data_dir);

  bool IsStopword(std::string_view lowercased) const {
    return stopwords_.contains(std::string(lowercased));
  }
  const std::unordered_set<std::string>& stopwords() const { return stopwords_; }
  const Lemmatizer& lemmatizer() const { return lemmatizer_; }

 private:
  std::unordered_set<std::string> stopwords_;
  Lemmatizer lemmatizer_;
};

struct TokenizedCorpus {
  // Token ids per document; ids index `vocabulary`.
  std::vector<std::vector<int>> docs;
  // Unique tokens in first-seen order.
  std::vector<std::string> vocabulary;
  // Source row of each document.
  std::vector<std::size_t> doc_ids;
  // Corpus-wide count per vocabulary id.
  std::vector<std::size_t> term_frequencies;

  std::size_t vocab_size() const { return vocabulary.size(); }
  std::size_t total_tokens() const;
  std::vector<std::string> DocTokens(std::size_t doc) const;

  // Builds ids, vocabulary and frequencies from token lists. Document i gets
  // doc id i unless `doc_ids` is given.
  static TokenizedCorpus FromTokens(
      const std::vector<std::vector<std::string>>& docs,
      std::vector<std::size_t> doc_ids = {});
};

std::string CleanText(std::string_view text, const PrepOptions& options);

std::vector<std::string> Tokenize(std::string_view text);

std::vector<std::string> RemoveStopwords(
    std::vector<std::string> tokens,
    const std::set<std::string, std::less<>>& extra_stopwords,
    const TextResources& resources);

std::string LemmatizeToken(std::string_view token,
                           const TextResources& resources);

// Applies the chosen normalization to one token.
std::string NormalizeToken(std::string_view token, Normalization normalization,
                           const TextResources& resources);

// clean -> tokenize -> stopwords -> normalize for every row of `column`.
// Throws Error(kUnknownColumn) and Error(kNonTextColumn).
TokenizedCorpus BuildCorpus(const Dataset& dataset, std::string_view column,
                            const PrepOptions& options,
                            const TextResources& resources);

}  // namespace bibliotext

#endif  // BIBLIOTEXT_TEXTPREP_HPP_
