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

// Minimal UTF-8 helpers. Character classes cover ASCII exactly and treat the
// Latin, Greek and Cyrillic blocks as letters; the common punctuation and
// symbol blocks are classified as punctuation. That is enough for English
// bibliographic text without pulling in ICU.

#ifndef BIBLIOTEXT_UTF8_HPP_
#define BIBLIOTEXT_UTF8_HPP_

#include <cstddef>
#include <string>
#include <string_view>

namespace bibliotext::utf8 {

inline constexpr std::string_view kBom = "\xEF\xBB\xBF";

bool IsValid(std::string_view bytes);

// Decodes one code point starting at `pos` and advances `pos`. Invalid
// sequences decode as U+FFFD and advance by one byte.
char32_t Next(std::string_view text, std::size_t& pos);

void Append(std::string& out, char32_t cp);

bool IsSpace(char32_t cp);
bool IsAlnum(char32_t cp);

char32_t ToLower(char32_t cp);
std::string ToLower(std::string_view text);

// Trims Unicode whitespace at both ends.
std::string_view Trim(std::string_view text);

// Collapses whitespace runs into single ASCII spaces and trims the ends.
std::string CollapseWhitespace(std::string_view text);

}  // namespace bibliotext::utf8

#endif  // BIBLIOTEXT_UTF8_HPP_
