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

#ifndef BIBLIOTEXT_RESOURCES_HPP_
#define BIBLIOTEXT_RESOURCES_HPP_

#include <filesystem>

#include "bibliotext/ingest.hpp"
#include "bibliotext/textprep.hpp"

namespace bibliotext {

// Root holding data/ and mappings/. BIBLIOTEXT_RESOURCES overrides the
// location baked in at build time.
std::filesystem::path ResourceRoot();

// Everything the engine reads from disk, loaded once.
struct Resources {
  MappingSet mappings;
  TextResources text;

  static Resources Load(const std::filesystem::path& root);

  // Process-wide instance loaded lazily from ResourceRoot().
  static const Resources& Default();
};

}  // namespace bibliotext

#endif  // BIBLIOTEXT_RESOURCES_HPP_
