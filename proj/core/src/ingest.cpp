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

#include "bibliotext/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bibliotext/csv.hpp"
#include "bibliotext/error.hpp"
#include "bibliotext/utf8.hpp"

namespace bibliotext {

namespace {

using json = nlohmann::json;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() && utf8::ToLower(a) == utf8::ToLower(b);
}

std::string Trimmed(std::string_view s) { return std::string(utf8::Trim(s)); }

// Strips the BOM and validates the encoding.
std::string_view Decode(std::string_view raw) {
  if (raw.empty()) throw Error(ErrorCode::kEmptyFile, "file is empty");
  if (raw.starts_with(utf8::kBom)) raw.remove_prefix(utf8::kBom.size());
  if (!utf8::IsValid(raw)) {
    throw Error(ErrorCode::kUndecodableFile,
                "file is not valid UTF-8; re-export it as UTF-8 (with or "
                "without BOM)");
  }
  if (utf8::Trim(raw).empty()) {
    throw Error(ErrorCode::kEmptyFile, "file contains no data");
  }
  return raw;
}

std::string_view FirstLine(std::string_view text) {
  std::size_t pos = 0;
  // Skip leading blank lines.
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!utf8::Trim(line).empty()) {
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      return line;
    }
    pos = end + 1;
  }
  return {};
}

bool IsTagChar(char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); }

bool LooksLikeTagLine(std::string_view line) {
  return line.size() >= 2 && IsTagChar(line[0]) && IsTagChar(line[1]) &&
         (line.size() == 2 || line[2] == ' ');
}

bool IsWosTagged(std::string_view text) {
  const std::string_view first = FirstLine(text);
  if (!LooksLikeTagLine(first)) return false;
  const std::string_view tag = first.substr(0, 2);
  if (tag != "FN" && tag != "VR" && tag != "PT") return false;
  // A tagged export always terminates records with a bare ER line.
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = utf8::Trim(text.substr(pos, end - pos));
    if (line == "ER") return true;
    pos = end + 1;
  }
  return false;
}

std::vector<std::string> HeaderFields(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  const auto rows = csv::Parse(line, delimiter, delimiter != '\t');
  if (!rows.empty()) {
    for (const auto& f : rows.front().fields) fields.push_back(Trimmed(f));
  }
  return fields;
}

std::size_t SignatureMatches(const std::vector<std::string>& header,
                             const FieldMapping& mapping) {
  std::set<std::string_view> present(header.begin(), header.end());
  for (const auto& required : mapping.required_signature) {
    if (!present.contains(required)) return 0;
  }
  std::size_t matches = 0;
  for (const auto& column : mapping.signature) {
    if (present.contains(column)) ++matches;
  }
  return matches >= mapping.min_signature_matches ? matches : 0;
}

char SniffDelimiter(std::string_view header_line) {
  const auto tabs = std::count(header_line.begin(), header_line.end(), '\t');
  const auto commas = std::count(header_line.begin(), header_line.end(), ',');
  return tabs > 0 && tabs >= commas ? '\t' : ',';
}

void DropTrailingEmpty(std::vector<std::string>& fields, std::size_t keep) {
  while (fields.size() > keep && utf8::Trim(fields.back()).empty()) {
    fields.pop_back();
  }
}

Table ReadDelimited(std::string_view text, char delimiter) {
  const bool quoting = delimiter != '\t';
  const std::vector<csv::Row> rows = csv::Parse(text, delimiter, quoting);
  Table table;
  if (rows.empty()) throw Error(ErrorCode::kMissingHeader, "no header row");
  for (const auto& name : rows.front().fields) {
    table.header.push_back(Trimmed(name));
  }
  DropTrailingEmpty(table.header, 0);
  if (table.header.empty()) {
    throw Error(ErrorCode::kMissingHeader, "header row has no column names");
  }
  const std::size_t width = table.header.size();

  std::size_t data_row = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> fields = rows[i].fields;
    DropTrailingEmpty(fields, width);
    if (fields.size() == width) {
      table.rows.push_back(std::move(fields));
      ++data_row;
      continue;
    }
    // Quote repair: stray quotes can merge or split rows, so retry every
    // physical line of the raw span with quotes taken literally.
    std::vector<std::vector<std::string>> repaired;
    bool ok = true;
    std::string_view raw = rows[i].raw;
    std::size_t pos = 0;
    while (pos <= raw.size()) {
      std::size_t end = raw.find('\n', pos);
      if (end == std::string_view::npos) end = raw.size();
      std::string_view line = raw.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!utf8::Trim(line).empty()) {
        auto literal = csv::SplitLiteral(line, delimiter);
        DropTrailingEmpty(literal, width);
        if (literal.size() != width) {
          ok = false;
          break;
        }
        repaired.push_back(std::move(literal));
      }
      pos = end + 1;
    }
    if (!ok || repaired.empty()) {
      std::ostringstream msg;
      msg << "row " << (data_row + 1) << " (line " << rows[i].line << ") has "
          << rows[i].fields.size() << " fields, expected " << width;
      throw MalformedRowError(data_row + 1, msg.str());
    }
    for (auto& r : repaired) {
      table.rows.push_back(std::move(r));
      ++data_row;
    }
  }
  return table;
}

Table ReadWosTagged(std::string_view text, const FieldMapping& mapping) {
  const std::set<std::string, std::less<>> list_tags(
      mapping.line_list_tags.begin(), mapping.line_list_tags.end());
  std::vector<std::string> columns;
  std::vector<std::map<std::string, std::string, std::less<>>> records;
  std::map<std::string, std::string, std::less<>> current;
  std::string tag;
  bool in_record = false;

  auto flush = [&]() {
    if (!current.empty()) records.push_back(std::move(current));
    current.clear();
    in_record = false;
    tag.clear();
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (utf8::Trim(line).empty()) continue;

    if (line.front() == ' ' || line.front() == '\t') {
      if (!in_record || tag.empty()) continue;
      const std::string value = Trimmed(line);
      std::string& cell = current[tag];
      cell += list_tags.contains(tag) ? "; " : " ";
      cell += value;
      continue;
    }
    if (!LooksLikeTagLine(line)) continue;
    const std::string_view t = line.substr(0, 2);
    if (t == "EF") break;
    if (t == "ER") {
      flush();
      continue;
    }
    if (!in_record && (t == "FN" || t == "VR")) continue;
    in_record = true;
    tag = std::string(t);
    const std::string value = line.size() > 3 ? Trimmed(line.substr(3)) : "";
    if (std::find(columns.begin(), columns.end(), tag) == columns.end()) {
      columns.push_back(tag);
    }
    auto [it, inserted] = current.try_emplace(tag, value);
    if (!inserted) {
      it->second += list_tags.contains(tag) ? "; " : " ";
      it->second += value;
    }
  }
  flush();

  Table table;
  table.header = columns;
  for (const auto& record : records) {
    std::vector<std::string> row;
    row.reserve(columns.size());
    for (const auto& column : columns) {
      auto it = record.find(column);
      row.push_back(it == record.end() ? std::string() : it->second);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::optional<int> ParseYear(std::string_view cell) {
  if (cell.size() != 4) return std::nullopt;
  int year = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + 4, year);
  if (ec != std::errc() || ptr != cell.data() + 4 || year < 1000) {
    return std::nullopt;
  }
  return year;
}

std::optional<std::int64_t> ParseCount(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || value < 0) {
    return std::nullopt;
  }
  return value;
}

enum class Role { kScalar, kKeyword, kExtra };

Dataset BuildDataset(const Table& table, SourceKind kind,
                     const FieldMapping& mapping) {
  std::vector<std::string> names;
  std::vector<Role> roles;
  std::set<std::string, std::less<>> used;
  for (const auto& source_name : table.header) {
    std::string name = mapping.Rename(source_name);
    if (kind == SourceKind::kCustom) {
      for (std::string_view canonical : field::kScalarFields) {
        if (EqualsIgnoreCase(name, canonical)) name = std::string(canonical);
      }
    }
    if (used.contains(name)) {
      int suffix = 2;
      while (used.contains(name + " (" + std::to_string(suffix) + ")")) ++suffix;
      name += " (" + std::to_string(suffix) + ")";
    }
    used.insert(name);
    if (field::IsCanonicalScalar(name)) {
      roles.push_back(Role::kScalar);
    } else if (IsKeywordColumnName(name)) {
      roles.push_back(Role::kKeyword);
    } else {
      roles.push_back(Role::kExtra);
    }
    names.push_back(std::move(name));
  }

  std::vector<std::string> warnings;
  std::vector<BiblioRecord> records;
  records.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    BiblioRecord record;
    for (std::size_t c = 0; c < names.size(); ++c) {
      std::string cell = c < row.size() ? Trimmed(row[c]) : std::string();
      const std::string& name = names[c];
      switch (roles[c]) {
        case Role::kKeyword:
          record.keyword_fields[name] = SplitMultivalue(cell);
          break;
        case Role::kExtra:
          record.extra[name] = std::move(cell);
          break;
        case Role::kScalar:
          if (name == field::kTitle) {
            record.title = std::move(cell);
          } else if (name == field::kAbstract) {
            if (!cell.empty()) record.abstract = std::move(cell);
          } else if (name == field::kDocumentType) {
            if (!cell.empty()) record.document_type = std::move(cell);
          } else if (name == field::kSourceTitle) {
            if (!cell.empty()) record.source_title = std::move(cell);
          } else if (name == field::kPublicationYear) {
            record.publication_year = ParseYear(cell);
            if (!cell.empty() && !record.publication_year) {
              warnings.push_back("row " + std::to_string(r + 1) +
                                 ": unparseable year '" + cell + "'");
            }
          } else if (name == field::kCitations) {
            record.citations = ParseCount(cell);
            if (!cell.empty() && !record.citations) {
              warnings.push_back("row " + std::to_string(r + 1) +
                                 ": unparseable citation count '" + cell + "'");
            }
          }
          break;
      }
    }
    records.push_back(std::move(record));
  }
  return Dataset(std::move(records), kind, std::move(names),
                 std::move(warnings));
}

bool IsNumber(std::string_view cell) {
  double value;
  auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

std::size_t CountTokens(std::string_view cell) {
  std::size_t tokens = 0;
  bool in_token = false;
  std::size_t pos = 0;
  while (pos < cell.size()) {
    const bool space = utf8::IsSpace(utf8::Next(cell, pos));
    if (!space && !in_token) ++tokens;
    in_token = !space;
  }
  return tokens;
}

SourceKind KindFromName(const std::string& name) {
  if (auto kind = ParseSourceKind(name)) return *kind;
  throw Error(ErrorCode::kInvalidParams, "unknown source kind '" + name + "'");
}

}  // namespace

std::string_view SourceKindName(SourceKind kind) {
  switch (kind) {
    case SourceKind::kScopus: return "scopus";
    case SourceKind::kWos: return "wos";
    case SourceKind::kLens: return "lens";
    case SourceKind::kCustom: return "custom";
  }
  return "custom";
}

std::optional<SourceKind> ParseSourceKind(std::string_view name) {
  for (SourceKind kind : {SourceKind::kScopus, SourceKind::kWos,
                          SourceKind::kLens, SourceKind::kCustom}) {
    if (name == SourceKindName(kind)) return kind;
  }
  return std::nullopt;
}

namespace field {
bool IsCanonicalScalar(std::string_view name) {
  return std::find(std::begin(kScalarFields), std::end(kScalarFields), name) !=
         std::end(kScalarFields);
}
}  // namespace field

bool IsKeywordColumnName(std::string_view name) {
  return utf8::ToLower(name).find("keyword") != std::string::npos;
}

std::string_view ColumnKindName(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kText: return "text";
    case ColumnKind::kNumeric: return "numeric";
    case ColumnKind::kYear: return "year";
    case ColumnKind::kMultivalue: return "multivalue";
  }
  return "text";
}

FieldMapping FieldMapping::FromJson(std::string_view json_text) {
  FieldMapping mapping;
  try {
    const json doc = json::parse(json_text);
    mapping.kind = KindFromName(doc.at("source").get<std::string>());
    mapping.version = doc.value("version", 1);
    const std::string delimiter = doc.value("delimiter", std::string(","));
    if (delimiter.size() != 1) {
      throw Error(ErrorCode::kInvalidParams, "delimiter must be one character");
    }
    mapping.delimiter = delimiter.front();
    mapping.min_signature_matches = doc.value("min_signature_matches", 3);
    mapping.signature = doc.value("signature", std::vector<std::string>{});
    mapping.required_signature =
        doc.value("required_signature", std::vector<std::string>{});
    mapping.line_list_tags =
        doc.value("line_list_tags", std::vector<std::string>{});
    const json columns = doc.value("columns", json::object());
    for (const auto& [source, target] : columns.items()) {
      mapping.columns.emplace(source, target.get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidParams,
                std::string("invalid mapping config: ") + e.what());
  }
  std::map<std::string, std::string, std::less<>> claimed;
  for (const auto& [source, target] : mapping.columns) {
    if (!field::IsCanonicalScalar(target) && !IsKeywordColumnName(target)) {
      continue;
    }
    auto [it, inserted] = claimed.emplace(target, source);
    if (!inserted) {
      throw Error(ErrorCode::kInvalidParams,
                  "mapping is not injective: '" + it->second + "' and '" +
                      source + "' both map to '" + target + "'");
    }
  }
  return mapping;
}

FieldMapping FieldMapping::Custom() {
  FieldMapping mapping;
  mapping.kind = SourceKind::kCustom;
  mapping.min_signature_matches = 0;
  return mapping;
}

std::string FieldMapping::Rename(std::string_view source_column) const {
  auto it = columns.find(source_column);
  return it == columns.end() ? std::string(source_column) : it->second;
}

MappingSet::MappingSet()
    : scopus_(FieldMapping::Custom()),
      wos_(FieldMapping::Custom()),
      lens_(FieldMapping::Custom()),
      custom_(FieldMapping::Custom()) {
  // Without configs nothing can match a signature.
  for (FieldMapping* m : {&scopus_, &wos_, &lens_}) {
    m->min_signature_matches = static_cast<std::size_t>(-1);
  }
  scopus_.kind = SourceKind::kScopus;
  wos_.kind = SourceKind::kWos;
  lens_.kind = SourceKind::kLens;
}

MappingSet::MappingSet(FieldMapping scopus, FieldMapping wos, FieldMapping lens)
    : scopus_(std::move(scopus)),
      wos_(std::move(wos)),
      lens_(std::move(lens)),
      custom_(FieldMapping::Custom()) {}

MappingSet MappingSet::Load(const std::filesystem::path& directory) {
  auto read = [&](const char* name) {
    const auto path = directory / name;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::kIo, "cannot read mapping " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return FieldMapping::FromJson(buffer.str());
  };
  return MappingSet(read("scopus.json"), read("wos.json"), read("lens.json"));
}

const FieldMapping& MappingSet::For(SourceKind kind) const {
  switch (kind) {
    case SourceKind::kScopus: return scopus_;
    case SourceKind::kWos: return wos_;
    case SourceKind::kLens: return lens_;
    case SourceKind::kCustom: return custom_;
  }
  return custom_;
}

Dataset::Dataset(std::vector<BiblioRecord> records, SourceKind source,
                 std::vector<std::string> columns,
                 std::vector<std::string> warnings)
    : records_(std::move(records)),
      source_(source),
      warnings_(std::move(warnings)) {
  catalog_.reserve(columns.size());
  for (auto& name : columns) {
    ColumnInfo info;
    info.name = std::move(name);
    catalog_.push_back(std::move(info));
  }
  for (auto& info : catalog_) {
    std::size_t tokens = 0;
    std::size_t semicolons = 0;
    bool all_numeric = true;
    bool all_years = true;
    for (std::size_t r = 0; r < records_.size(); ++r) {
      const std::string cell = *Cell(r, info.name);
      if (cell.empty()) continue;
      ++info.non_empty;
      tokens += CountTokens(cell);
      if (cell.find(';') != std::string::npos) ++semicolons;
      if (all_numeric && !IsNumber(cell)) all_numeric = false;
      if (all_years && !ParseYear(cell)) all_years = false;
    }
    if (info.non_empty > 0) {
      info.mean_tokens = static_cast<double>(tokens) / info.non_empty;
      info.semicolon_fraction = static_cast<double>(semicolons) / info.non_empty;
    }
    if (info.name == field::kPublicationYear) {
      info.kind = ColumnKind::kYear;
    } else if (info.name == field::kCitations) {
      info.kind = ColumnKind::kNumeric;
    } else if (info.non_empty > 0 && all_numeric) {
      info.kind = all_years && utf8::ToLower(info.name).find("year") !=
                                   std::string::npos
                      ? ColumnKind::kYear
                      : ColumnKind::kNumeric;
    } else if (info.non_empty > 0 && info.semicolon_fraction >= 0.1) {
      info.kind = ColumnKind::kMultivalue;
    } else {
      info.kind = ColumnKind::kText;
    }
  }
}

const ColumnInfo* Dataset::column(std::string_view name) const {
  for (const auto& info : catalog_) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

std::optional<std::string> Dataset::Cell(std::size_t row,
                                         std::string_view name) const {
  const BiblioRecord& record = records_.at(row);
  if (name == field::kTitle) return record.title;
  if (name == field::kAbstract) return record.abstract.value_or("");
  if (name == field::kDocumentType) return record.document_type.value_or("");
  if (name == field::kSourceTitle) return record.source_title.value_or("");
  if (name == field::kPublicationYear) {
    return record.publication_year ? std::to_string(*record.publication_year)
                                   : std::string();
  }
  if (name == field::kCitations) {
    return record.citations ? std::to_string(*record.citations) : std::string();
  }
  if (auto it = record.keyword_fields.find(name);
      it != record.keyword_fields.end()) {
    return JoinMultivalue(it->second);
  }
  if (auto it = record.extra.find(name); it != record.extra.end()) {
    return it->second;
  }
  if (column(name) != nullptr) return std::string();
  return std::nullopt;
}

std::vector<std::size_t> Dataset::RowsMissingTitle() const {
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < records_.size(); ++r) {
    if (records_[r].title.empty()) rows.push_back(r);
  }
  return rows;
}

Dataset Dataset::WithRecords(std::vector<BiblioRecord> records) const {
  std::vector<std::string> names;
  names.reserve(catalog_.size());
  for (const auto& info : catalog_) names.push_back(info.name);
  return Dataset(std::move(records), source_, std::move(names), warnings_);
}

SourceKind DetectSource(std::string_view raw, std::string_view /*filename*/,
                        const MappingSet& mappings) {
  const std::string_view text = Decode(raw);
  if (IsWosTagged(text)) return SourceKind::kWos;
  const std::string_view header_line = FirstLine(text);

  SourceKind best = SourceKind::kCustom;
  std::size_t best_matches = 0;
  for (SourceKind kind :
       {SourceKind::kScopus, SourceKind::kWos, SourceKind::kLens}) {
    const FieldMapping& mapping = mappings.For(kind);
    if (mapping.delimiter == '\t' &&
        header_line.find('\t') == std::string_view::npos) {
      continue;
    }
    const auto header = HeaderFields(header_line, mapping.delimiter);
    const std::size_t matches = SignatureMatches(header, mapping);
    if (matches > best_matches) {
      best = kind;
      best_matches = matches;
    }
  }
  return best;
}

Dataset ParseDataset(std::string_view raw, SourceKind kind,
                     const FieldMapping& mapping) {
  const std::string_view text = Decode(raw);
  Table table;
  if (kind == SourceKind::kWos && IsWosTagged(text)) {
    table = ReadWosTagged(text, mapping);
    if (table.header.empty()) {
      throw Error(ErrorCode::kMissingHeader, "no tagged records found");
    }
  } else {
    const char delimiter = kind == SourceKind::kCustom
                               ? SniffDelimiter(FirstLine(text))
                               : mapping.delimiter;
    table = ReadDelimited(text, delimiter);
  }
  return BuildDataset(table, kind, mapping);
}

Dataset LoadDataset(std::string_view raw, std::string_view filename,
                    const MappingSet& mappings) {
  const SourceKind kind = DetectSource(raw, filename, mappings);
  return ParseDataset(raw, kind, mappings.For(kind));
}

std::vector<std::string> SplitMultivalue(std::string_view cell,
                                         char delimiter) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= cell.size()) {
    std::size_t end = cell.find(delimiter, start);
    if (end == std::string_view::npos) end = cell.size();
    const std::string_view token = utf8::Trim(cell.substr(start, end - start));
    if (!token.empty()) items.emplace_back(token);
    start = end + 1;
  }
  return items;
}

std::string JoinMultivalue(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += "; ";
    out += items[i];
  }
  return out;
}

std::string ToCanonicalCsv(const Dataset& dataset) {
  std::string out;
  std::vector<std::string> row;
  for (const auto& info : dataset.column_catalog()) row.push_back(info.name);
  csv::AppendRow(out, row);
  for (std::size_t r = 0; r < dataset.row_count(); ++r) {
    row.clear();
    for (const auto& info : dataset.column_catalog()) {
      row.push_back(*dataset.Cell(r, info.name));
    }
    csv::AppendRow(out, row);
  }
  return out;
}

}  // namespace bibliotext
