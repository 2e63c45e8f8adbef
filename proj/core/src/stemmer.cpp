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

// Porter2 as published on snowballstem.org (the English stemmer with the
// gener/commun/arsen R1 exceptions). Suffix lists are searched longest
// first; when the longest matching suffix fails its condition the step does
// nothing, which is how Snowball's `among` behaves.

#include "bibliotext/stemmer.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace bibliotext {

namespace {

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool EndsWith(const std::string& word, std::string_view suffix) {
  return word.size() >= suffix.size() &&
         std::string_view(word).substr(word.size() - suffix.size()) == suffix;
}

void ReplaceSuffix(std::string& word, std::size_t suffix_len,
                   std::string_view replacement) {
  word.resize(word.size() - suffix_len);
  word += replacement;
}

// Returns the longest suffix in `suffixes` that ends `word`, or empty.
template <std::size_t N>
std::string_view LongestSuffix(const std::string& word,
                               const std::array<std::string_view, N>& suffixes) {
  std::string_view best;
  for (std::string_view s : suffixes) {
    if (s.size() > best.size() && EndsWith(word, s)) best = s;
  }
  return best;
}

// Start of the region after the first non-vowel following a vowel.
std::size_t RegionAfter(const std::string& word, std::size_t from) {
  for (std::size_t i = from + 1; i < word.size(); ++i) {
    if (!IsVowel(word[i]) && IsVowel(word[i - 1])) return i + 1;
  }
  return word.size();
}

// Short syllable ending at position `end` (exclusive).
bool ShortSyllableAt(const std::string& word, std::size_t end) {
  if (end == 2) {
    return IsVowel(word[0]) && !IsVowel(word[1]);
  }
  if (end < 3) return false;
  const char last = word[end - 1];
  return !IsVowel(last) && last != 'w' && last != 'x' && last != 'Y' &&
         IsVowel(word[end - 2]) && !IsVowel(word[end - 3]);
}

bool ShortSyllableEnding(const std::string& word) {
  if (word.size() < 2) return false;
  const std::size_t n = word.size();
  // Snowball's shortv: non-v_WXY v non-v, or non-v v at the word start.
  if (n >= 3 && !IsVowel(word[n - 1]) && word[n - 1] != 'w' &&
      word[n - 1] != 'x' && word[n - 1] != 'Y' && IsVowel(word[n - 2]) &&
      !IsVowel(word[n - 3])) {
    return true;
  }
  return n == 2 && !IsVowel(word[1]) && IsVowel(word[0]);
}

bool ContainsVowel(const std::string& word, std::size_t end) {
  for (std::size_t i = 0; i < end; ++i) {
    if (IsVowel(word[i])) return true;
  }
  return false;
}

bool ValidLiEnding(char c) {
  switch (c) {
    case 'c': case 'd': case 'e': case 'g': case 'h':
    case 'k': case 'm': case 'n': case 'r': case 't':
      return true;
    default:
      return false;
  }
}

const std::string* Exception1(const std::string& word) {
  static const std::array<std::pair<std::string, std::string>, 18> kTable = {{
      {"skis", "ski"},     {"skies", "sky"},    {"dying", "die"},
      {"lying", "lie"},    {"tying", "tie"},    {"idly", "idl"},
      {"gently", "gentl"}, {"ugly", "ugli"},    {"early", "earli"},
      {"only", "onli"},    {"singly", "singl"}, {"sky", "sky"},
      {"news", "news"},    {"howe", "howe"},    {"atlas", "atlas"},
      {"cosmos", "cosmos"}, {"bias", "bias"},   {"andes", "andes"},
  }};
  for (const auto& [from, to] : kTable) {
    if (word == from) return &to;
  }
  return nullptr;
}

bool IsException2(const std::string& word) {
  static constexpr std::array<std::string_view, 8> kWords = {
      "inning", "outing", "canning", "herring",
      "earring", "proceed", "exceed", "succeed"};
  return std::find(kWords.begin(), kWords.end(), word) != kWords.end();
}

void Step0(std::string& word) {
  static constexpr std::array<std::string_view, 3> kSuffixes = {"'", "'s", "'s'"};
  const std::string_view s = LongestSuffix(word, kSuffixes);
  if (!s.empty()) word.resize(word.size() - s.size());
}

void Step1a(std::string& word) {
  static constexpr std::array<std::string_view, 6> kSuffixes = {
      "sses", "ied", "ies", "s", "us", "ss"};
  const std::string_view s = LongestSuffix(word, kSuffixes);
  if (s == "sses") {
    ReplaceSuffix(word, 4, "ss");
  } else if (s == "ied" || s == "ies") {
    ReplaceSuffix(word, 3, word.size() > 4 ? "i" : "ie");
  } else if (s == "s") {
    // Delete when a vowel occurs before the letter preceding the s.
    if (word.size() >= 3 && ContainsVowel(word, word.size() - 2)) {
      word.pop_back();
    }
  }
}

void Step1b(std::string& word, std::size_t r1) {
  static constexpr std::array<std::string_view, 6> kSuffixes = {
      "eed", "eedly", "ed", "edly", "ing", "ingly"};
  const std::string_view s = LongestSuffix(word, kSuffixes);
  if (s.empty()) return;
  if (s == "eed" || s == "eedly") {
    if (word.size() - s.size() >= r1) ReplaceSuffix(word, s.size(), "ee");
    return;
  }
  const std::size_t stem_len = word.size() - s.size();
  if (!ContainsVowel(word, stem_len)) return;
  word.resize(stem_len);
  if (EndsWith(word, "at") || EndsWith(word, "bl") || EndsWith(word, "iz")) {
    word += 'e';
    return;
  }
  static constexpr std::array<std::string_view, 9> kDoubles = {
      "bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt"};
  for (std::string_view d : kDoubles) {
    if (EndsWith(word, d)) {
      word.pop_back();
      return;
    }
  }
  if (word.size() == r1 && ShortSyllableEnding(word)) word += 'e';
}

void Step1c(std::string& word) {
  const std::size_t n = word.size();
  if (n > 2 && (word[n - 1] == 'y' || word[n - 1] == 'Y') &&
      !IsVowel(word[n - 2])) {
    word[n - 1] = 'i';
  }
}

void Step2(std::string& word, std::size_t r1) {
  static constexpr std::array<std::string_view, 24> kSuffixes = {
      "tional", "enci",  "anci",   "abli",    "entli",   "izer",
      "ization", "ational", "ation", "ator",  "alism",   "aliti",
      "alli",   "fulness", "ousli", "ousness", "iveness", "iviti",
      "biliti", "bli",   "ogi",    "fulli",   "lessli",  "li"};
  const std::string_view s = LongestSuffix(word, kSuffixes);
  if (s.empty() || word.size() - s.size() < r1) return;
  const std::size_t len = s.size();
  if (s == "tional") ReplaceSuffix(word, len, "tion");
  else if (s == "enci") ReplaceSuffix(word, len, "ence");
  else if (s == "anci") ReplaceSuffix(word, len, "ance");
  else if (s == "abli") ReplaceSuffix(word, len, "able");
  else if (s == "entli") ReplaceSuffix(word, len, "ent");
  else if (s == "izer" || s == "ization") ReplaceSuffix(word, len, "ize");
  else if (s == "ational" || s == "ation" || s == "ator") ReplaceSuffix(word, len, "ate");
  else if (s == "alism" || s == "aliti" || s == "alli") ReplaceSuffix(word, len, "al");
  else if (s == "fulness" || s == "fulli") ReplaceSuffix(word, len, "ful");
  else if (s == "ousli" || s == "ousness") ReplaceSuffix(word, len, "ous");
  else if (s == "iveness" || s == "iviti") ReplaceSuffix(word, len, "ive");
  else if (s == "biliti" || s == "bli") ReplaceSuffix(word, len, "ble");
  else if (s == "ogi") {
    if (word.size() > len && word[word.size() - len - 1] == 'l') {
      ReplaceSuffix(word, len, "og");
    }
  } else if (s == "lessli") {
    ReplaceSuffix(word, len, "less");
  } else if (s == "li") {
    if (word.size() > len && ValidLiEnding(word[word.size() - len - 1])) {
      word.resize(word.size() - len);
    }
  }
}

void Step3(std::string& word, std::size_t r1, std::size_t r2) {
  static constexpr std::array<std::string_view, 9> kSuffixes = {
      "tional", "ational", "alize", "icate", "iciti",
      "ical",   "ful",     "ness",  "ative"};
  const std::string_view s = LongestSuffix(word, kSuffixes);
  if (s.empty() || word.size() - s.size() < r1) return;
  const std::size_t len = s.size();
  if (s == "tional") ReplaceSuffix(word, len, "tion");
  else if (s == "ational") ReplaceSuffix(word, len, "ate");
  else if (s == "alize") ReplaceSuffix(word, len, "al");
  else if (s == "icate" || s == "iciti" || s == "ical") ReplaceSuffix(word, len, "ic");
  else if (s == "ful" || s == "ness") word.resize(word.size() - len);
  else if (s == "ative") {
    if (word.size() - len >= r2) word.resize(word.size() - len);
  }
}

void Step4(std::string& word, std::size_t r2) {
  static constexpr std::array<std::string_view, 18> kSuffixes = {
      "al",   "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement",
      "ment", "ent",  "ism",  "ate", "iti", "ous",  "ive",  "ize", "ion"};
  const std::string_view s = LongestSuffix(word, kSuffixes);
  if (s.empty() || word.size() - s.size() < r2) return;
  if (s == "ion") {
    const std::size_t stem = word.size() - 3;
    if (stem > 0 && (word[stem - 1] == 's' || word[stem - 1] == 't')) {
      word.resize(stem);
    }
    return;
  }
  word.resize(word.size() - s.size());
}

void Step5(std::string& word, std::size_t r1, std::size_t r2) {
  if (word.empty()) return;
  const std::size_t stem = word.size() - 1;
  if (word.back() == 'e') {
    if (stem >= r2 ||
        (stem >= r1 && !ShortSyllableAt(word, stem))) {
      word.pop_back();
    }
  } else if (word.back() == 'l') {
    if (stem >= r2 && stem > 0 && word[stem - 1] == 'l') word.pop_back();
  }
}

}  // namespace

std::string StemToken(std::string_view token) {
  std::string word(token);
  if (const std::string* exception = Exception1(word)) return *exception;
  if (word.size() < 3) return word;

  // Prelude.
  if (word.front() == '\'') word.erase(0, 1);
  if (!word.empty() && word.front() == 'y') word.front() = 'Y';
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (word[i] == 'y' && IsVowel(word[i - 1])) word[i] = 'Y';
  }

  std::size_t r1;
  if (word.starts_with("gener") || word.starts_with("arsen")) {
    r1 = 5;
  } else if (word.starts_with("commun")) {
    r1 = 6;
  } else {
    r1 = RegionAfter(word, 0);
  }
  const std::size_t r2 = r1 >= word.size() ? word.size() : RegionAfter(word, r1);

  Step0(word);
  Step1a(word);
  if (!IsException2(word)) {
    Step1b(word, r1);
    Step1c(word);
    Step2(word, r1);
    Step3(word, r1, r2);
    Step4(word, r2);
    Step5(word, r1, r2);
  }

  std::replace(word.begin(), word.end(), 'Y', 'y');
  return word;
}

}  // namespace bibliotext
