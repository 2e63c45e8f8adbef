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

// One entry point per analysis, shared by the CLI and the HTTP service so
// both produce byte-identical results for identical inputs.

#ifndef BIBLIOTEXT_ENGINE_HPP_
#define BIBLIOTEXT_ENGINE_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bibliotext/capability.hpp"
#include "bibliotext/ingest.hpp"
#include "bibliotext/resources.hpp"

namespace bibliotext {

enum class AnalysisKind {
  kKeywordsStem,
  kTopicLda,
  kTopicBtm,
  kTopicCtfidf,
  kNetwork,
  kSunburst,
};

inline constexpr std::array<AnalysisKind, 6> kAllAnalysisKinds = {
    AnalysisKind::kKeywordsStem, AnalysisKind::kTopicLda,
    AnalysisKind::kTopicBtm,     AnalysisKind::kTopicCtfidf,
    AnalysisKind::kNetwork,      AnalysisKind::kSunburst};

// keywords_stem, topic_lda, topic_btm, topic_ctfidf, network, sunburst.
std::string_view AnalysisKindName(AnalysisKind kind);
std::optional<AnalysisKind> ParseAnalysisKind(std::string_view name);

// The file-checker verdict that gates `kind`.
Analysis RequiredCapability(AnalysisKind kind);

// A named output file. Names are plain file names (no directories).
struct OutputFile {
  std::string name;
  std::string content;
};

struct AnalysisOutput {
  nlohmann::json result;
  std::vector<OutputFile> files;
};

// Checks keys, types and ranges and fills defaults. The embeddings payload
// (topic_ctfidf) passes through untouched. Throws Error(kInvalidParams).
nlohmann::json NormalizeParams(AnalysisKind kind, const nlohmann::json& params);

// Throws Error(kNotEligible) with the missing fields when the dataset
// cannot support `kind`.
void RequireEligible(const Dataset& dataset, AnalysisKind kind);

// Validates, checks eligibility, runs, and serializes. Throws Error.
AnalysisOutput RunAnalysis(const Dataset& dataset, AnalysisKind kind,
                           const nlohmann::json& params,
                           const Resources& resources);

// Canonical text form of a result document: two-space indent, trailing
// newline.
std::string SerializeResult(const nlohmann::json& result);

}  // namespace bibliotext

#endif  // BIBLIOTEXT_ENGINE_HPP_
