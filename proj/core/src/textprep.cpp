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

#include "bibliotext/textprep.hpp"

#include <fstream>
#include <numeric>
#include <regex>
#include <unordered_map>

#include "bibliotext/error.hpp"
#include "bibliotext/stemmer.hpp"
#include "bibliotext/utf8.hpp"

namespace bibliotext {

namespace {

bool IsAsciiLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Whole-word, case-insensitive search.
bool ContainsWord(std::string_view lowered, std::string_view word) {
  std::size_t pos = lowered.find(word);
  while (pos != std::string_view::npos) {
    const bool left_ok = pos == 0 || !IsAsciiLetter(lowered[pos - 1]);
    const std::size_t end = pos + word.size();
    const bool right_ok = end >= lowered.size() || !IsAsciiLetter(lowered[end]);
    if (left_ok && right_ok) return true;
    pos = lowered.find(word, pos + 1);
  }
  return false;
}

bool IsCopyrightSentence(std::string_view sentence) {
  static constexpr std::string_view kCopyrightSign = "\xC2\xA9";
  if (sentence.find(kCopyrightSign) != std::string_view::npos) return true;
  const std::string lowered = utf8::ToLower(sentence);
  if (ContainsWord(lowered, "copyright")) return true;
  if (lowered.find("rights reserved") != std::string::npos) return true;
  static const std::regex kParenC(R"(\(c\)\s*[0-9]{4})");
  return std::regex_search(lowered, kParenC);
}

std::string RemoveCopyrightSentences(std::string_view text) {
  std::string out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find_first_of(".!?", start);
    if (end == std::string_view::npos) {
      end = text.size();
    } else {
      // Keep runs like "?!" or "..." with their sentence.
      while (end < text.size() && (text[end] == '.' || text[end] == '!' ||
                                   text[end] == '?')) {
        ++end;
      }
    }
    const std::string_view sentence = text.substr(start, end - start);
    if (!IsCopyrightSentence(sentence)) out.append(sentence);
    start = end;
  }
  return out;
}

bool IsJoiner(char32_t cp) {
  return cp == U'-' || cp == U'\'' || cp == 0x2019;
}

}  // namespace

std::string_view NormalizationName(Normalization normalization) {
  switch (normalization) {
    case Normalization::kNone: return "none";
    case Normalization::kLemmatize: return "lemmatize";
    case Normalization::kStem: return "stem";
  }
  return "none";
}

std::optional<Normalization> ParseNormalization(std::string_view name) {
  for (Normalization n : {Normalization::kNone, Normalization::kLemmatize,
                          Normalization::kStem}) {
    if (NormalizationName(n) == name) return n;
  }
  return std::nullopt;
}

void PrepOptions::SetExtraStopwords(const std::vector<std::string>& words) {
  extra_stopwords.clear();
  for (const auto& word : words) {
    std::string normalized = utf8::ToLower(utf8::Trim(word));
    if (!normalized.empty()) extra_stopwords.insert(std::move(normalized));
  }
}

TextResources TextResources::Load(const std::filesystem::path& data_dir) {
  const auto path = data_dir / "stopwords_en.txt";
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::unordered_set<std::string> stopwords;
  std::string line;
  while (std::getline(in, line)) {
    std::string word = utf8::ToLower(utf8::Trim(line));
    if (!word.empty()) stopwords.insert(std::move(word));
  }
  return TextResources(std::move(stopwords), Lemmatizer::Load(data_dir));
}

std::size_t TokenizedCorpus::total_tokens() const {
  return std::accumulate(term_frequencies.begin(), term_frequencies.end(),
                         std::size_t{0});
}

std::vector<std::string> TokenizedCorpus::DocTokens(std::size_t doc) const {
  std::vector<std::string> tokens;
  tokens.reserve(docs.at(doc).size());
  for (int id : docs[doc]) tokens.push_back(vocabulary[id]);
  return tokens;
}

TokenizedCorpus TokenizedCorpus::FromTokens(
    const std::vector<std::vector<std::string>>& docs,
    std::vector<std::size_t> doc_ids) {
  TokenizedCorpus corpus;
  std::unordered_map<std::string, int> ids;
  corpus.docs.reserve(docs.size());
  for (const auto& tokens : docs) {
    std::vector<int> doc;
    doc.reserve(tokens.size());
    for (const auto& token : tokens) {
      auto [it, inserted] =
          ids.try_emplace(token, static_cast<int>(corpus.vocabulary.size()));
      if (inserted) {
        corpus.vocabulary.push_back(token);
        corpus.term_frequencies.push_back(0);
      }
      ++corpus.term_frequencies[it->second];
      doc.push_back(it->second);
    }
    corpus.docs.push_back(std::move(doc));
  }
  if (doc_ids.empty()) {
    doc_ids.resize(docs.size());
    std::iota(doc_ids.begin(), doc_ids.end(), std::size_t{0});
  }
  corpus.doc_ids = std::move(doc_ids);
  return corpus;
}

std::string CleanText(std::string_view text, const PrepOptions& options) {
  std::string current;
  if (options.remove_copyright) {
    current = RemoveCopyrightSentences(text);
  } else {
    current.assign(text);
  }
  if (options.remove_punctuation) {
    std::string stripped;
    stripped.reserve(current.size());
    std::size_t pos = 0;
    while (pos < current.size()) {
      const std::size_t start = pos;
      const char32_t cp = utf8::Next(current, pos);
      if (utf8::IsAlnum(cp) || utf8::IsSpace(cp)) {
        stripped.append(current, start, pos - start);
      } else {
        stripped.push_back(' ');
      }
    }
    current = std::move(stripped);
  }
  if (options.lowercase) current = utf8::ToLower(current);
  return utf8::CollapseWhitespace(current);
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string token;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t cp = utf8::Next(text, pos);
    if (utf8::IsAlnum(cp)) {
      token.append(text.substr(start, pos - start));
      continue;
    }
    if (IsJoiner(cp) && !token.empty() && pos < text.size()) {
      std::size_t peek = pos;
      if (utf8::IsAlnum(utf8::Next(text, peek))) {
        token.append(text.substr(start, pos - start));
        continue;
      }
    }
    if (!token.empty()) {
      tokens.push_back(std::move(token));
      token.clear();
    }
  }
  if (!token.empty()) tokens.push_back(std::move(token));
  return tokens;
}

std::vector<std::string> RemoveStopwords(
    std::vector<std::string> tokens,
    const std::set<std::string, std::less<>>& extra_stopwords,
    const TextResources& resources) {
  std::erase_if(tokens, [&](const std::string& token) {
    const std::string lowered = utf8::ToLower(token);
    return resources.IsStopword(lowered) || extra_stopwords.contains(lowered);
  });
  return tokens;
}

std::string LemmatizeToken(std::string_view token,
                           const TextResources& resources) {
  return resources.lemmatizer().Lemmatize(token);
}

std::string NormalizeToken(std::string_view token, Normalization normalization,
                           const TextResources& resources) {
  switch (normalization) {
    case Normalization::kNone:
      return std::string(token);
    case Normalization::kLemmatize:
      return resources.lemmatizer().Lemmatize(utf8::ToLower(token));
    case Normalization::kStem:
      return StemToken(utf8::ToLower(token));
  }
  return std::string(token);
}

TokenizedCorpus BuildCorpus(const Dataset& dataset, std::string_view column,
                            const PrepOptions& options,
                            const TextResources& resources) {
  const ColumnInfo* info = dataset.column(column);
  if (info == nullptr) {
    throw Error(ErrorCode::kUnknownColumn,
                "unknown column '" + std::string(column) + "'");
  }
  if (info->kind == ColumnKind::kNumeric || info->kind == ColumnKind::kYear) {
    throw Error(ErrorCode::kNonTextColumn,
                "column '" + std::string(column) + "' is " +
                    std::string(ColumnKindName(info->kind)) + ", not text");
  }
  std::vector<std::vector<std::string>> docs;
  std::vector<std::size_t> doc_ids;
  docs.reserve(dataset.row_count());
  for (std::size_t row = 0; row < dataset.row_count(); ++row) {
    const std::string cleaned =
        CleanText(dataset.Cell(row, column).value_or(""), options);
    std::vector<std::string> tokens = RemoveStopwords(
        Tokenize(cleaned), options.extra_stopwords, resources);
    for (auto& token : tokens) {
      token = NormalizeToken(token, options.normalization, resources);
    }
    docs.push_back(std::move(tokens));
    doc_ids.push_back(row);
  }
  return TokenizedCorpus::FromTokens(docs, std::move(doc_ids));
}

}  // namespace bibliotext
