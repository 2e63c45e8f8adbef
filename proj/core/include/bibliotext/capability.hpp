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

// The file checker: which analyses a dataset supports and what it lacks.

#ifndef BIBLIOTEXT_CAPABILITY_HPP_
#define BIBLIOTEXT_CAPABILITY_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bibliotext/ingest.hpp"

namespace bibliotext {

enum class Analysis {
  kKeywordsStem,
  kTopicModeling,
  kBidirectionalNetwork,
  kSunburst,
};

inline constexpr std::array<Analysis, 4> kAllAnalyses = {
    Analysis::kKeywordsStem, Analysis::kTopicModeling,
    Analysis::kBidirectionalNetwork, Analysis::kSunburst};

std::string_view AnalysisName(Analysis analysis);
std::optional<Analysis> ParseAnalysis(std::string_view name);

// Requirement labels reported when no column qualifies.
inline constexpr std::string_view kKeywordRequirement = "Keywords";
inline constexpr std::string_view kMultivalueRequirement =
    "Semicolon-delimited column";

// Minimum mean token count for a free-form column to count as prose.
inline constexpr double kTextColumnMinTokens = 3.0;

struct AnalysisCapability {
  bool eligible = false;
  std::vector<std::string> missing_fields;
  std::vector<std::string> usable_columns;

  bool operator==(const AnalysisCapability&) const = default;
};

struct CapabilityReport {
  std::array<AnalysisCapability, 4> analyses;

  const AnalysisCapability& at(Analysis analysis) const {
    return analyses[static_cast<std::size_t>(analysis)];
  }
  AnalysisCapability& at(Analysis analysis) {
    return analyses[static_cast<std::size_t>(analysis)];
  }

  nlohmann::json ToJson() const;
  static CapabilityReport FromJson(const nlohmann::json& doc);

  bool operator==(const CapabilityReport&) const = default;
};

// Pure over the column catalog and its per-column statistics.
CapabilityReport CheckCapabilities(std::span<const ColumnInfo> catalog);
CapabilityReport CheckCapabilities(const Dataset& dataset);

// Columns whose name contains "keyword" (any case), in catalog order.
std::vector<std::string> DetectKeywordColumns(std::span<const ColumnInfo> catalog);
std::vector<std::string> DetectKeywordColumns(const Dataset& dataset);

// Columns that qualify as prose for topic modeling.
std::vector<std::string> DetectTextColumns(std::span<const ColumnInfo> catalog);

// Plain-text table, one row per analysis.
std::string RenderCapabilityTable(const CapabilityReport& report);

}  // namespace bibliotext

#endif  // BIBLIOTEXT_CAPABILITY_HPP_
