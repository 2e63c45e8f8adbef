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

#include "bibliotext/resources.hpp"

#include <cstdlib>

#ifndef BIBLIOTEXT_DEFAULT_RESOURCE_ROOT
#define BIBLIOTEXT_DEFAULT_RESOURCE_ROOT "."
#endif
#ifndef BIBLIOTEXT_INSTALL_RESOURCE_ROOT
#define BIBLIOTEXT_INSTALL_RESOURCE_ROOT "/usr/local/share/bibliotext"
#endif

namespace bibliotext {

std::filesystem::path ResourceRoot() {
  if (const char* env = std::getenv("BIBLIOTEXT_RESOURCES");
      env != nullptr && *env != '\0') {
    return env;
  }
  // The source tree wins while it exists; installed copies otherwise.
  const std::filesystem::path source_tree = BIBLIOTEXT_DEFAULT_RESOURCE_ROOT;
  std::error_code ec;
  if (std::filesystem::is_directory(source_tree / "mappings", ec)) {
    return source_tree;
  }
  return BIBLIOTEXT_INSTALL_RESOURCE_ROOT;
}

Resources Resources::Load(const std::filesystem::path& root) {
  return Resources{MappingSet::Load(root / "mappings"),
                   TextResources::Load(root / "data")};
}

const Resources& Resources::Default() {
  static const Resources instance = Load(ResourceRoot());
  return instance;
}

}  // namespace bibliotext
