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

#ifndef BIBLIOTEXT_STEMMER_HPP_
#define BIBLIOTEXT_STEMMER_HPP_

#include <string>
#include <string_view>

namespace bibliotext {

// Snowball English (Porter2) stemmer. Expects a lowercased word; bytes
// outside a-z and the apostrophe are treated as consonants.
std::string StemToken(std::string_view token);

}  // namespace bibliotext

#endif  // BIBLIOTEXT_STEMMER_HPP_
