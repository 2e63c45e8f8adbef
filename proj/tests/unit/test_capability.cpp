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


#include <doctest.h>

#include <algorithm>
#include <random>

#include "bibliotext/capability.hpp"
#include "test_support.hpp"

namespace bt = bibliotext;

namespace {

const std::vector<std::string> kSunburstFields = {
    "Publication Year", "Citations", "Document Type", "Source Title"};

bt::BiblioRecord FullRecord(int i) {
  bt::BiblioRecord r;
  r.title = "A study of topic number " + std::to_string(i);
  r.abstract = "We describe an approach to mining bibliographic records";
  r.keyword_fields["Author Keywords"] = {"text mining", "topic " + std::to_string(i % 3)};
  r.publication_year = 2000 + i % 5;
  r.citations = i;
  r.document_type = i % 2 ? "Article" : "Review";
  r.source_title = "Journal " + std::to_string(i % 4);
  return r;
}

// Dataset holding only `columns`, populated from full records.
bt::Dataset DatasetWith(const std::vector<std::string>& columns) {
  std::vector<bt::BiblioRecord> records;
  for (int i = 0; i < 12; ++i) {
    bt::BiblioRecord full = FullRecord(i);
    bt::BiblioRecord r;
    auto has = [&](std::string_view c) {
      return std::find(columns.begin(), columns.end(), c) != columns.end();
    };
    if (has("Title")) r.title = full.title;
    if (has("Abstract")) r.abstract = full.abstract;
    if (has("Author Keywords")) r.keyword_fields = full.keyword_fields;
    if (has("Publication Year")) r.publication_year = full.publication_year;
    if (has("Citations")) r.citations = full.citations;
    if (has("Document Type")) r.document_type = full.document_type;
    if (has("Source Title")) r.source_title = full.source_title;
    records.push_back(std::move(r));
  }
  return bt::Dataset(std::move(records), bt::SourceKind::kCustom, columns);
}

const std::vector<std::string> kAllColumns = {
    "Title",        "Abstract",      "Author Keywords", "Publication Year",
    "Citations",    "Document Type", "Source Title"};

std::vector<std::string> Without(std::vector<std::string> columns,
                                 const std::vector<std::string>& drop) {
  std::erase_if(columns, [&](const std::string& c) {
    return std::find(drop.begin(), drop.end(), c) != drop.end();
  });
  return columns;
}

bool Names(const bt::AnalysisCapability& cap, std::string_view field) {
  return std::find(cap.missing_fields.begin(), cap.missing_fields.end(), field) !=
         cap.missing_fields.end();
}

}  // namespace

TEST_CASE("full-field dataset is eligible for every analysis") {
  const auto report = bt::CheckCapabilities(DatasetWith(kAllColumns));
  for (auto analysis : bt::kAllAnalyses) {
    CAPTURE(bt::AnalysisName(analysis));
    CHECK(report.at(analysis).eligible);
    CHECK(report.at(analysis).missing_fields.empty());
  }
}

TEST_CASE("removing one requirement makes exactly that analysis ineligible") {
  SUBCASE("keywords") {
    const auto report =
        bt::CheckCapabilities(DatasetWith(Without(kAllColumns, {"Author Keywords"})));
    CHECK_FALSE(report.at(bt::Analysis::kKeywordsStem).eligible);
    CHECK(Names(report.at(bt::Analysis::kKeywordsStem), bt::kKeywordRequirement));
    CHECK(report.at(bt::Analysis::kTopicModeling).eligible);
    CHECK(report.at(bt::Analysis::kSunburst).eligible);
  }
  SUBCASE("text") {
    const auto report =
        bt::CheckCapabilities(DatasetWith(Without(kAllColumns, {"Title", "Abstract"})));
    CHECK_FALSE(report.at(bt::Analysis::kTopicModeling).eligible);
    CHECK(Names(report.at(bt::Analysis::kTopicModeling), "Title"));
    CHECK(Names(report.at(bt::Analysis::kTopicModeling), "Abstract"));
    CHECK(report.at(bt::Analysis::kKeywordsStem).eligible);
  }
  SUBCASE("multivalue") {
    const auto report =
        bt::CheckCapabilities(DatasetWith(Without(kAllColumns, {"Author Keywords"})));
    CHECK_FALSE(report.at(bt::Analysis::kBidirectionalNetwork).eligible);
    CHECK(Names(report.at(bt::Analysis::kBidirectionalNetwork),
                bt::kMultivalueRequirement));
  }
}

TEST_CASE("sunburst eligibility over all 16 subsets of its required fields") {
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<std::string> drop;
    for (unsigned i = 0; i < 4; ++i) {
      if (mask & (1u << i)) drop.push_back(kSunburstFields[i]);
    }
    CAPTURE(mask);
    const auto cap =
        bt::CheckCapabilities(DatasetWith(Without(kAllColumns, drop))).at(bt::Analysis::kSunburst);
    CHECK(cap.eligible == drop.empty());
    CHECK(cap.missing_fields.size() == drop.size());
    for (const auto& field : drop) CHECK(Names(cap, field));
  }
}

TEST_CASE("present but empty sunburst column is missing") {
  std::vector<bt::BiblioRecord> records = {FullRecord(1), FullRecord(2)};
  for (auto& r : records) r.citations.reset();
  const bt::Dataset ds(records, bt::SourceKind::kCustom, kAllColumns);
  const auto cap = bt::CheckCapabilities(ds).at(bt::Analysis::kSunburst);
  CHECK_FALSE(cap.eligible);
  CHECK(cap.missing_fields == std::vector<std::string>{"Citations"});
}

TEST_CASE("title, keywords and abstract only") {
  const auto report =
      bt::CheckCapabilities(DatasetWith({"Title", "Author Keywords", "Abstract"}));
  const auto& sun = report.at(bt::Analysis::kSunburst);
  CHECK_FALSE(sun.eligible);
  CHECK(sun.missing_fields == kSunburstFields);
}

TEST_CASE("numeric-only dataset is ineligible everywhere") {
  std::vector<bt::BiblioRecord> records(3);
  for (std::size_t i = 0; i < records.size(); ++i) records[i].extra["Score"] = std::to_string(i);
  const bt::Dataset numeric(records, bt::SourceKind::kCustom, {"Score"});
  const auto report = bt::CheckCapabilities(numeric);
  for (auto analysis : bt::kAllAnalyses) CHECK_FALSE(report.at(analysis).eligible);
}

TEST_CASE("eligibility and missing fields agree; usable columns exist") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 128; ++trial) {
    std::vector<std::string> columns;
    for (const auto& c : kAllColumns) {
      if (rng() % 2) columns.push_back(c);
    }
    const bt::Dataset ds = DatasetWith(columns);
    const auto report = bt::CheckCapabilities(ds);
    for (auto analysis : bt::kAllAnalyses) {
      const auto& cap = report.at(analysis);
      CHECK(cap.eligible == cap.missing_fields.empty());
      for (const auto& used : cap.usable_columns) CHECK(ds.has_column(used));
    }
  }
}

TEST_CASE("adding a column never removes eligibility") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 128; ++trial) {
    std::vector<std::string> smaller;
    for (const auto& c : kAllColumns) {
      if (rng() % 2) smaller.push_back(c);
    }
    const auto before = bt::CheckCapabilities(DatasetWith(smaller));
    for (const auto& extra : kAllColumns) {
      if (std::find(smaller.begin(), smaller.end(), extra) != smaller.end()) continue;
      auto larger = smaller;
      larger.push_back(extra);
      const auto after = bt::CheckCapabilities(DatasetWith(larger));
      for (auto analysis : bt::kAllAnalyses) {
        if (before.at(analysis).eligible) CHECK(after.at(analysis).eligible);
      }
    }
  }
}

TEST_CASE("keyword column detection") {
  auto names = [](std::vector<std::string> cols) {
    std::vector<bt::ColumnInfo> catalog;
    for (auto& c : cols) catalog.push_back(bt::ColumnInfo{c});
    return bt::DetectKeywordColumns(catalog);
  };
  CHECK(names({"Author Keywords", "Keywords Plus", "Abstract"}) ==
        std::vector<std::string>{"Author Keywords", "Keywords Plus"});
  CHECK(names({"KEYWORD"}) == std::vector<std::string>{"KEYWORD"});
  CHECK(names({"Title", "Abstract"}).empty());
}

TEST_CASE("report JSON round trip") {
  const auto report = bt::CheckCapabilities(DatasetWith({"Title", "Citations"}));
  CHECK(bt::CapabilityReport::FromJson(report.ToJson()) == report);
}
