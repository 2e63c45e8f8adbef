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

#include "bibliotext/error.hpp"

namespace bibliotext {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUndecodableFile: return "UndecodableFile";
    case ErrorCode::kEmptyFile: return "EmptyFile";
    case ErrorCode::kMissingHeader: return "MissingHeader";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kNonTextColumn: return "NonTextColumn";
    case ErrorCode::kNoKeywordColumns: return "NoKeywordColumns";
    case ErrorCode::kNoMultivalueContent: return "NoMultivalueContent";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kNoBiterms: return "NoBiterms";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTooFewDocs: return "TooFewDocs";
    case ErrorCode::kLabelLengthMismatch: return "LabelLengthMismatch";
    case ErrorCode::kInvalidLambda: return "InvalidLambda";
    case ErrorCode::kInvalidSupport: return "InvalidSupport";
    case ErrorCode::kInvalidConfidence: return "InvalidConfidence";
    case ErrorCode::kNotEligible: return "NotEligible";
    case ErrorCode::kEmptyAfterFilter: return "EmptyAfterFilter";
    case ErrorCode::kMissingEmbedding: return "MissingEmbedding";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace bibliotext
