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

#include "bibliotext/sunburst.hpp"

#include <algorithm>
#include <map>

#include "bibliotext/capability.hpp"
#include "bibliotext/csv.hpp"
#include "bibliotext/error.hpp"

namespace bibliotext {

namespace {

struct Tally {
  std::size_t count = 0;
  std::int64_t citations = 0;
};

using YearTally = std::map<int, Tally>;
using SourceTally = std::map<std::string, YearTally>;
using TypeTally = std::map<std::string, SourceTally>;

void SortChildren(SunburstNode& node) {
  std::sort(node.children.begin(), node.children.end(),
            [](const SunburstNode& a, const SunburstNode& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.label < b.label;
            });
}

// Sums children into `node`; inner value is the count-weighted mean of the
// children's per-document means.
void Aggregate(SunburstNode& node) {
  node.count = 0;
  node.total_citations = 0;
  double weighted = 0.0;
  for (const auto& child : node.children) {
    node.count += child.count;
    node.total_citations += child.total_citations;
    weighted += static_cast<double>(child.count) * child.mean;
  }
  node.mean = node.count == 0 ? 0.0 : weighted / static_cast<double>(node.count);
  node.value = node.mean;
  SortChildren(node);
}

void Flatten(const SunburstNode& node, const std::string& parent, SunburstFlat& flat) {
  const std::string id = "n" + std::to_string(flat.ids.size());
  flat.ids.push_back(id);
  flat.labels.push_back(node.label);
  flat.parents.push_back(parent);
  flat.layers.emplace_back(SunburstLayerName(node.layer));
  flat.values.push_back(node.count);
  flat.colors.push_back(node.value);
  for (const auto& child : node.children) Flatten(child, id, flat);
}

}  // namespace

std::string_view SunburstLayerName(SunburstLayer layer) {
  switch (layer) {
    case SunburstLayer::kRoot: return "root";
    case SunburstLayer::kDocumentType: return "document_type";
    case SunburstLayer::kSourceTitle: return "source_title";
    case SunburstLayer::kPublicationYear: return "publication_year";
  }
  return "root";
}

SunburstResult BuildSunburst(const Dataset& dataset,
                             std::optional<YearRange> year_range) {
  const CapabilityReport report = CheckCapabilities(dataset);
  const AnalysisCapability& capability = report.at(Analysis::kSunburst);
  if (!capability.eligible) {
    std::string missing;
    for (const auto& field : capability.missing_fields) {
      missing += (missing.empty() ? "" : ", ") + field;
    }
    throw Error(ErrorCode::kNotEligible, "sunburst needs: " + missing);
  }
  if (year_range && year_range->first > year_range->second) {
    throw Error(ErrorCode::kInvalidParams, "year_min exceeds year_max");
  }

  SunburstResult result;
  TypeTally tally;
  for (const auto& record : dataset.records()) {
    if (!record.document_type || !record.source_title || !record.publication_year) {
      ++result.excluded_rows;
      continue;
    }
    const int year = *record.publication_year;
    if (year_range && (year < year_range->first || year > year_range->second)) {
      ++result.filtered_rows;
      continue;
    }
    Tally& leaf = tally[*record.document_type][*record.source_title][year];
    ++leaf.count;
    leaf.citations += record.citations.value_or(0);
  }
  if (tally.empty()) {
    throw Error(ErrorCode::kEmptyAfterFilter, "no rows left to aggregate");
  }

  SunburstNode& root = result.root;
  root.label = "All documents";
  root.layer = SunburstLayer::kRoot;
  for (const auto& [type, sources] : tally) {
    SunburstNode type_node;
    type_node.label = type;
    type_node.layer = SunburstLayer::kDocumentType;
    for (const auto& [source, years] : sources) {
      SunburstNode source_node;
      source_node.label = source;
      source_node.layer = SunburstLayer::kSourceTitle;
      for (const auto& [year, leaf] : years) {
        SunburstNode year_node;
        year_node.label = std::to_string(year);
        year_node.layer = SunburstLayer::kPublicationYear;
        year_node.count = leaf.count;
        year_node.total_citations = leaf.citations;
        year_node.mean =
            static_cast<double>(leaf.citations) / static_cast<double>(leaf.count);
        year_node.value = static_cast<double>(leaf.citations);
        source_node.children.push_back(std::move(year_node));
      }
      Aggregate(source_node);
      type_node.children.push_back(std::move(source_node));
    }
    Aggregate(type_node);
    root.children.push_back(std::move(type_node));
  }
  Aggregate(root);
  return result;
}

nlohmann::json SunburstToJson(const SunburstNode& node) {
  nlohmann::json children = nlohmann::json::array();
  for (const auto& child : node.children) children.push_back(SunburstToJson(child));
  return {{"label", node.label},
          {"layer", SunburstLayerName(node.layer)},
          {"count", node.count},
          {"value", node.value},
          {"mean", node.mean},
          {"total_citations", node.total_citations},
          {"children", std::move(children)}};
}

SunburstFlat FlattenSunburst(const SunburstNode& root) {
  SunburstFlat flat;
  Flatten(root, "", flat);
  return flat;
}

nlohmann::json FlatToJson(const SunburstFlat& flat) {
  return {{"ids", flat.ids},       {"labels", flat.labels},
          {"parents", flat.parents}, {"layers", flat.layers},
          {"values", flat.values}, {"colors", flat.colors}};
}

std::string FlatToCsv(const SunburstFlat& flat) {
  std::string out = "id,label,parent,layer,count,value\n";
  for (std::size_t i = 0; i < flat.ids.size(); ++i) {
    const std::string row[] = {flat.ids[i],    flat.labels[i],
                               flat.parents[i], flat.layers[i],
                               std::to_string(flat.values[i]),
                               csv::FormatDouble(flat.colors[i])};
    csv::AppendRow(out, row);
  }
  return out;
}

}  // namespace bibliotext
