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

#include "bibliotext/capability.hpp"

#include <iomanip>
#include <sstream>

namespace bibliotext {

namespace {

const ColumnInfo* Find(std::span<const ColumnInfo> catalog,
                       std::string_view name) {
  for (const auto& info : catalog) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

void Finish(AnalysisCapability& capability) {
  capability.eligible = capability.missing_fields.empty();
}

}  // namespace

std::string_view AnalysisName(Analysis analysis) {
  switch (analysis) {
    case Analysis::kKeywordsStem: return "keywords_stem";
    case Analysis::kTopicModeling: return "topic_modeling";
    case Analysis::kBidirectionalNetwork: return "bidirectional_network";
    case Analysis::kSunburst: return "sunburst";
  }
  return "";
}

std::optional<Analysis> ParseAnalysis(std::string_view name) {
  for (Analysis analysis : kAllAnalyses) {
    if (AnalysisName(analysis) == name) return analysis;
  }
  return std::nullopt;
}

std::vector<std::string> DetectKeywordColumns(
    std::span<const ColumnInfo> catalog) {
  std::vector<std::string> columns;
  for (const auto& info : catalog) {
    if (IsKeywordColumnName(info.name)) columns.push_back(info.name);
  }
  return columns;
}

std::vector<std::string> DetectKeywordColumns(const Dataset& dataset) {
  return DetectKeywordColumns(dataset.column_catalog());
}

std::vector<std::string> DetectTextColumns(std::span<const ColumnInfo> catalog) {
  std::vector<std::string> columns;
  for (const auto& info : catalog) {
    if (info.non_empty == 0) continue;
    const bool named_text =
        info.name == field::kTitle || info.name == field::kAbstract;
    const bool prose = info.kind == ColumnKind::kText &&
                       info.mean_tokens >= kTextColumnMinTokens;
    if (named_text || prose) columns.push_back(info.name);
  }
  return columns;
}

CapabilityReport CheckCapabilities(std::span<const ColumnInfo> catalog) {
  CapabilityReport report;

  auto& stem = report.at(Analysis::kKeywordsStem);
  stem.usable_columns = DetectKeywordColumns(catalog);
  if (stem.usable_columns.empty()) {
    stem.missing_fields.emplace_back(kKeywordRequirement);
  }
  Finish(stem);

  auto& topics = report.at(Analysis::kTopicModeling);
  topics.usable_columns = DetectTextColumns(catalog);
  if (topics.usable_columns.empty()) {
    topics.missing_fields.emplace_back(field::kTitle);
    topics.missing_fields.emplace_back(field::kAbstract);
  }
  Finish(topics);

  auto& network = report.at(Analysis::kBidirectionalNetwork);
  for (const auto& info : catalog) {
    if (info.kind == ColumnKind::kMultivalue) {
      network.usable_columns.push_back(info.name);
    }
  }
  if (network.usable_columns.empty()) {
    network.missing_fields.emplace_back(kMultivalueRequirement);
  }
  Finish(network);

  auto& sunburst = report.at(Analysis::kSunburst);
  for (std::string_view name :
       {field::kPublicationYear, field::kCitations, field::kDocumentType,
        field::kSourceTitle}) {
    const ColumnInfo* info = Find(catalog, name);
    if (info != nullptr && info->non_empty > 0) {
      sunburst.usable_columns.emplace_back(name);
    } else {
      sunburst.missing_fields.emplace_back(name);
    }
  }
  Finish(sunburst);
  return report;
}

CapabilityReport CheckCapabilities(const Dataset& dataset) {
  return CheckCapabilities(dataset.column_catalog());
}

nlohmann::json CapabilityReport::ToJson() const {
  nlohmann::json doc = nlohmann::json::object();
  for (Analysis analysis : kAllAnalyses) {
    const auto& capability = at(analysis);
    doc[std::string(AnalysisName(analysis))] = {
        {"eligible", capability.eligible},
        {"missing_fields", capability.missing_fields},
        {"usable_columns", capability.usable_columns},
    };
  }
  return doc;
}

CapabilityReport CapabilityReport::FromJson(const nlohmann::json& doc) {
  CapabilityReport report;
  for (Analysis analysis : kAllAnalyses) {
    const auto& entry = doc.at(std::string(AnalysisName(analysis)));
    auto& capability = report.at(analysis);
    capability.eligible = entry.at("eligible").get<bool>();
    capability.missing_fields =
        entry.at("missing_fields").get<std::vector<std::string>>();
    capability.usable_columns =
        entry.at("usable_columns").get<std::vector<std::string>>();
  }
  return report;
}

std::string RenderCapabilityTable(const CapabilityReport& report) {
  auto join = [](const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) out += ", ";
      out += items[i];
    }
    return out.empty() ? std::string("-") : out;
  };
  std::ostringstream out;
  out << std::left << std::setw(24) << "analysis" << std::setw(10)
      << "eligible" << "missing fields / usable columns\n";
  for (Analysis analysis : kAllAnalyses) {
    const auto& capability = report.at(analysis);
    out << std::setw(24) << AnalysisName(analysis) << std::setw(10)
        << (capability.eligible ? "yes" : "no")
        << (capability.eligible ? join(capability.usable_columns)
                                : "missing: " + join(capability.missing_fields))
        << '\n';
  }
  return out.str();
}

}  // namespace bibliotext
