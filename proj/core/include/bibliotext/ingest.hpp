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

// Bibliographic export ingestion: source detection, parsing of Scopus / Lens
// CSV, Web of Science tab-delimited and tagged plain-text exports and custom
// delimited files, and normalization into a canonical Dataset.

#ifndef BIBLIOTEXT_INGEST_HPP_
#define BIBLIOTEXT_INGEST_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bibliotext {

enum class SourceKind { kScopus, kWos, kLens, kCustom };

std::string_view SourceKindName(SourceKind kind);
std::optional<SourceKind> ParseSourceKind(std::string_view name);

// Canonical column names shared by every source.
namespace field {
inline constexpr std::string_view kTitle = "Title";
inline constexpr std::string_view kAbstract = "Abstract";
inline constexpr std::string_view kPublicationYear = "Publication Year";
inline constexpr std::string_view kCitations = "Citations";
inline constexpr std::string_view kDocumentType = "Document Type";
inline constexpr std::string_view kSourceTitle = "Source Title";

inline constexpr std::string_view kScalarFields[] = {
    kTitle,     kAbstract,     kPublicationYear,
    kCitations, kDocumentType, kSourceTitle};

// True for the six scalar canonical names (keyword columns are recognized by
// name instead, see IsKeywordColumnName).
bool IsCanonicalScalar(std::string_view name);
}  // namespace field

// Case-insensitive "contains keyword" test used for keyword columns.
bool IsKeywordColumnName(std::string_view name);

// Source-specific column names (or WoS tags) to canonical names, plus the
// header signature used to recognize the source. Loaded from
// mappings/{scopus,wos,lens}.json.
struct FieldMapping {
  SourceKind kind = SourceKind::kCustom;
  int version = 1;
  char delimiter = ',';
  std::size_t min_signature_matches = 3;
  std::vector<std::string> signature;
  // Columns that must all be present in addition to the match count.
  std::vector<std::string> required_signature;
  std::map<std::string, std::string, std::less<>> columns;
  // WoS tagged format: tags whose continuation lines are separate list items.
  std::vector<std::string> line_list_tags;

  // Throws Error(kInvalidParams) when the document is malformed or two
  // source columns map onto the same canonical field.
  static FieldMapping FromJson(std::string_view json_text);

  // Identity mapping used for custom files.
  static FieldMapping Custom();

  // Canonical name for a source column; unknown columns pass through.
  std::string Rename(std::string_view source_column) const;
};

class MappingSet {
 public:
  MappingSet();  // custom-only; every detection falls back to custom
  MappingSet(FieldMapping scopus, FieldMapping wos, FieldMapping lens);

  static MappingSet Load(const std::filesystem::path& directory);

  const FieldMapping& For(SourceKind kind) const;

 private:
  FieldMapping scopus_;
  FieldMapping wos_;
  FieldMapping lens_;
  FieldMapping custom_;
};

struct BiblioRecord {
  std::string title;
  std::optional<std::string> abstract;
  std::map<std::string, std::vector<std::string>, std::less<>> keyword_fields;
  std::optional<int> publication_year;
  std::optional<std::int64_t> citations;
  std::optional<std::string> document_type;
  std::optional<std::string> source_title;
  std::map<std::string, std::string, std::less<>> extra;

  bool operator==(const BiblioRecord&) const = default;
};

enum class ColumnKind { kText, kNumeric, kYear, kMultivalue };

std::string_view ColumnKindName(ColumnKind kind);

struct ColumnInfo {
  std::string name;
  ColumnKind kind = ColumnKind::kText;
  std::size_t non_empty = 0;
  // Mean whitespace-token count over non-empty cells.
  double mean_tokens = 0.0;
  // Share of non-empty cells containing a semicolon.
  double semicolon_fraction = 0.0;
};

// Immutable table of records. Column statistics are computed once at
// construction; every accessor is const and safe for concurrent readers.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<BiblioRecord> records, SourceKind source,
          std::vector<std::string> columns,
          std::vector<std::string> warnings = {});

  const std::vector<BiblioRecord>& records() const { return records_; }
  SourceKind source() const { return source_; }
  const std::vector<ColumnInfo>& column_catalog() const { return catalog_; }
  std::size_t row_count() const { return records_.size(); }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const ColumnInfo* column(std::string_view name) const;
  bool has_column(std::string_view name) const { return column(name) != nullptr; }

  // Text form of a cell: keyword lists joined with "; ", numbers in decimal,
  // absent values as "". Returns nullopt for unknown columns.
  std::optional<std::string> Cell(std::size_t row, std::string_view name) const;

  // Rows retained without a title.
  std::vector<std::size_t> RowsMissingTitle() const;

  // Same columns and source, new records (e.g. after keyword normalization).
  Dataset WithRecords(std::vector<BiblioRecord> records) const;

 private:
  std::vector<BiblioRecord> records_;
  SourceKind source_ = SourceKind::kCustom;
  std::vector<ColumnInfo> catalog_;
  std::vector<std::string> warnings_;
};

// Throws Error(kEmptyFile) / Error(kUndecodableFile).
SourceKind DetectSource(std::string_view raw, std::string_view filename,
                        const MappingSet& mappings);

// Throws MalformedRowError, Error(kMissingHeader), Error(kEmptyFile),
// Error(kUndecodableFile).
Dataset ParseDataset(std::string_view raw, SourceKind kind,
                     const FieldMapping& mapping);

// Detects and parses in one step.
Dataset LoadDataset(std::string_view raw, std::string_view filename,
                    const MappingSet& mappings);

// Splits on `delimiter`, trims each token, drops empty tokens.
std::vector<std::string> SplitMultivalue(std::string_view cell,
                                         char delimiter = ';');

std::string JoinMultivalue(const std::vector<std::string>& items);

// Canonical CSV: one column per catalog entry, canonical names in the header.
std::string ToCanonicalCsv(const Dataset& dataset);

}  // namespace bibliotext

#endif  // BIBLIOTEXT_INGEST_HPP_
