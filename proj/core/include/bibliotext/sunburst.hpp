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

// Document type, source title and publication year hierarchy. Slice size
// is the document count; color is citation based.

#ifndef BIBLIOTEXT_SUNBURST_HPP_
#define BIBLIOTEXT_SUNBURST_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bibliotext/ingest.hpp"

namespace bibliotext {

enum class SunburstLayer { kRoot, kDocumentType, kSourceTitle, kPublicationYear };

std::string_view SunburstLayerName(SunburstLayer layer);

struct SunburstNode {
  std::string label;
  SunburstLayer layer = SunburstLayer::kRoot;
  std::size_t count = 0;
  std::int64_t total_citations = 0;
  // Citations per document under this node.
  double mean = 0.0;
  // Leaves: total citations. Inner nodes: count-weighted mean of the
  // children's per-document means, which equals `mean`.
  double value = 0.0;
  std::vector<SunburstNode> children;
};

struct SunburstResult {
  SunburstNode root;
  // Rows lacking a document type, source title or year.
  std::size_t excluded_rows = 0;
  // Rows with every field present but outside the year range.
  std::size_t filtered_rows = 0;
};

using YearRange = std::pair<int, int>;

// Throws Error(kNotEligible), Error(kEmptyAfterFilter),
// Error(kInvalidParams) for an inverted range.
SunburstResult BuildSunburst(const Dataset& dataset,
                             std::optional<YearRange> year_range = std::nullopt);

// Recursive {label, layer, count, value, mean, children}.
nlohmann::json SunburstToJson(const SunburstNode& root);

// Pre-order flat arrays for chart renderers: ids, labels, parents, values
// (counts) and colors (node values).
struct SunburstFlat {
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<std::string> parents;
  std::vector<std::string> layers;
  std::vector<std::size_t> values;
  std::vector<double> colors;
};

SunburstFlat FlattenSunburst(const SunburstNode& root);
nlohmann::json FlatToJson(const SunburstFlat& flat);
// id,label,parent,layer,count,value
std::string FlatToCsv(const SunburstFlat& flat);

}  // namespace bibliotext

#endif  // BIBLIOTEXT_SUNBURST_HPP_
