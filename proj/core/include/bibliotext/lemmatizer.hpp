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

#ifndef BIBLIOTEXT_LEMMATIZER_HPP_
#define BIBLIOTEXT_LEMMATIZER_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace bibliotext {

// Dictionary lemmatizer in the style of WordNet's morphy, without POS tags:
// noun exceptions and detachment rules are tried before verb ones, and a
// candidate is accepted only if it is a known base form.
class Lemmatizer {
 public:
  Lemmatizer() = default;

  // Reads baseforms_en.txt and lemma_exceptions_{noun,verb}.txt.
  static Lemmatizer Load(const std::filesystem::path& data_dir);

  void AddBaseForm(std::string word);
  void AddNounException(std::string form, std::string lemma);
  void AddVerbException(std::string form, std::string lemma);

  bool IsBaseForm(std::string_view word) const;

  // `token` must already be lowercased.
  std::string Lemmatize(std::string_view token) const;

  const std::unordered_set<std::string>& base_forms() const { return base_forms_; }
  const std::unordered_map<std::string, std::string>& noun_exceptions() const {
    return noun_exceptions_;
  }
  const std::unordered_map<std::string, std::string>& verb_exceptions() const {
    return verb_exceptions_;
  }

 private:
  std::unordered_set<std::string> base_forms_;
  std::unordered_map<std::string, std::string> noun_exceptions_;
  std::unordered_map<std::string, std::string> verb_exceptions_;
};

}  // namespace bibliotext

#endif  // BIBLIOTEXT_LEMMATIZER_HPP_
