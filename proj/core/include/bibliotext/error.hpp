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

#ifndef BIBLIOTEXT_ERROR_HPP_
#define BIBLIOTEXT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace bibliotext {

// Error categories raised by the engine. The service and CLI map these onto
// HTTP status codes and process exit codes respectively.
enum class ErrorCode {
  kUndecodableFile,
  kEmptyFile,
  kMissingHeader,
  kMalformedRow,
  kUnknownColumn,
  kNonTextColumn,
  kNoKeywordColumns,
  kNoMultivalueContent,
  kEmptyCorpus,
  kNoBiterms,
  kInvalidParams,
  kDimensionMismatch,
  kTooFewDocs,
  kLabelLengthMismatch,
  kInvalidLambda,
  kInvalidSupport,
  kInvalidConfidence,
  kNotEligible,
  kEmptyAfterFilter,
  kMissingEmbedding,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by parse_dataset when a row cannot be repaired.
class MalformedRowError : public Error {
 public:
  MalformedRowError(std::size_t row, const std::string& message)
      : Error(ErrorCode::kMalformedRow, message), row_(row) {}

  // 1-based index of the offending data row (header excluded).
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

}  // namespace bibliotext

#endif  // BIBLIOTEXT_ERROR_HPP_
