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

#include <chrono>
#include <random>

#include "bibliotext/error.hpp"
#include "bibliotext/ingest.hpp"
#include "test_support.hpp"

namespace bt = bibliotext;
namespace bt_test = bibliotext::testing;

namespace {

const bt::MappingSet& Mappings() { return bt_test::TestResources().mappings; }

bt::SourceKind Detect(const std::string& raw, const std::string& name = "x.csv") {
  return bt::DetectSource(raw, name, Mappings());
}

}  // namespace

TEST_CASE("source detection from header signatures") {
  CHECK(Detect("PT\tAU\tTI\tSO\tDE\tAB\tPY\tTC\tDT\nJ\ta\tb\tc\td\te\t2020\t1\tArticle\n",
               "x.txt") == bt::SourceKind::kWos);
  CHECK(Detect("Authors,Title,Year,Source title,Cited by,Abstract,Author "
               "Keywords,Document Type\n") == bt::SourceKind::kScopus);
  CHECK(Detect("colA,colB\n1,2\n") == bt::SourceKind::kCustom);
  CHECK_THROWS_AS(Detect(""), bt::Error);
}

TEST_CASE("bundled fixtures are detected as their source") {
  CHECK(bt_test::LoadFixture("scopus.csv").source() == bt::SourceKind::kScopus);
  CHECK(bt_test::LoadFixture("wos.txt").source() == bt::SourceKind::kWos);
  CHECK(bt_test::LoadFixture("wos_tagged.txt").source() == bt::SourceKind::kWos);
  CHECK(bt_test::LoadFixture("lens.csv").source() == bt::SourceKind::kLens);
  for (const char* name :
       {"custom_survey.csv", "custom_canonical.csv", "custom_minimal.csv"}) {
    CHECK(bt_test::LoadFixture(name).source() == bt::SourceKind::kCustom);
  }
}

TEST_CASE("every fixture parses without malformed rows") {
  for (const auto& name : bt_test::FixtureNames()) {
    CAPTURE(name);
    bt::Dataset ds;
    CHECK_NOTHROW(ds = bt_test::LoadFixture(name));
    CHECK(ds.row_count() > 0);
  }
}

TEST_CASE("WoS tags expand to canonical names") {
  const std::string raw =
      "PT\tAU\tTI\tSO\tDE\tAB\tPY\tTC\tDT\n"
      "J\tDoe, J\tExample\tJournal X\tfoo; bar\tSome abstract text\t2021\t7\tArticle\n";
  const bt::Dataset ds = bt::LoadDataset(raw, "savedrecs.txt", Mappings());
  REQUIRE(ds.row_count() == 1);
  const auto& r = ds.records()[0];
  CHECK(r.title == "Example");
  CHECK(r.source_title == "Journal X");
  CHECK(r.publication_year == 2021);
  CHECK(r.citations == 7);
  CHECK(r.document_type == "Article");
  CHECK(r.abstract == "Some abstract text");
  REQUIRE(r.keyword_fields.contains("Author Keywords"));
  CHECK(r.keyword_fields.at("Author Keywords") ==
        std::vector<std::string>{"foo", "bar"});
}

TEST_CASE("WoS fixtures populate all seven canonical fields") {
  for (const char* name : {"wos.txt", "wos_tagged.txt"}) {
    CAPTURE(name);
    const bt::Dataset ds = bt_test::LoadFixture(name);
    bool title = false, abstract = false, keywords = false, year = false,
         citations = false, type = false, source = false;
    for (const auto& r : ds.records()) {
      title |= !r.title.empty();
      abstract |= r.abstract.has_value();
      keywords |= r.keyword_fields.contains("Author Keywords");
      year |= r.publication_year.has_value();
      citations |= r.citations.has_value();
      type |= r.document_type.has_value();
      source |= r.source_title.has_value();
    }
    CHECK(title);
    CHECK(abstract);
    CHECK(keywords);
    CHECK(year);
    CHECK(citations);
    CHECK(type);
    CHECK(source);
  }
}

TEST_CASE("Scopus numeric fields") {
  const std::string raw =
      "Authors,Title,Year,Source title,Cited by,Abstract,Author Keywords,Document Type\n"
      "A,T,2021,S,7,Abs,k1; k2,Article\n"
      "B,U,,S,,Abs,,Review\n";
  const bt::Dataset ds = bt::LoadDataset(raw, "scopus.csv", Mappings());
  REQUIRE(ds.row_count() == 2);
  CHECK(ds.records()[0].citations == 7);
  CHECK(ds.records()[0].publication_year == 2021);
  CHECK_FALSE(ds.records()[1].citations.has_value());
  CHECK_FALSE(ds.records()[1].publication_year.has_value());
}

TEST_CASE("empty data section gives zero rows") {
  const bt::Dataset ds = bt::LoadDataset("colA,colB\n", "x.csv", Mappings());
  CHECK(ds.row_count() == 0);
}

TEST_CASE("encoding policy") {
  CHECK_NOTHROW(bt::LoadDataset("\xEF\xBB\xBF" "colA,colB\n1,2\n", "x.csv", Mappings()));
  try {
    bt::LoadDataset("colA,colB\n\xFF\xFE,2\n", "x.csv", Mappings());
    FAIL("expected UndecodableFile");
  } catch (const bt::Error& e) {
    CHECK(e.code() == bt::ErrorCode::kUndecodableFile);
  }
}

TEST_CASE("malformed row reports its index") {
  try {
    bt::LoadDataset("colA,colB\n1,2\n3,4,5,6\n", "x.csv", Mappings());
    FAIL("expected MalformedRow");
  } catch (const bt::MalformedRowError& e) {
    CHECK(e.row() == 2);
  }
}

TEST_CASE("split_multivalue") {
  CHECK(bt::SplitMultivalue("topic modeling; libraries ;NLP") ==
        std::vector<std::string>{"topic modeling", "libraries", "NLP"});
  CHECK(bt::SplitMultivalue(";;").empty());
  CHECK(bt::SplitMultivalue("single") == std::vector<std::string>{"single"});

  std::mt19937_64 rng(11);
  const std::string alphabet = "ab ;\t";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    for (std::size_t n = rng() % 20; n > 0; --n) s += alphabet[rng() % alphabet.size()];
    for (const auto& item : bt::SplitMultivalue(s)) CHECK_FALSE(item.empty());
  }
}

TEST_CASE("canonical round trip is field-identical on every fixture") {
  for (const auto& name : bt_test::FixtureNames()) {
    CAPTURE(name);
    const bt::Dataset ds = bt_test::LoadFixture(name);
    const std::string canonical = bt::ToCanonicalCsv(ds);
    const bt::Dataset back = bt::ParseDataset(canonical, bt::SourceKind::kCustom,
                                              bt::FieldMapping::Custom());
    REQUIRE(back.row_count() == ds.row_count());
    for (std::size_t r = 0; r < ds.row_count(); ++r) {
      CAPTURE(r);
      CHECK(back.records()[r] == ds.records()[r]);
    }
  }
}

TEST_CASE("detection is deterministic") {
  const std::string raw = bt_test::ReadFile(bt_test::FixturePath("lens.csv"));
  const auto first = Detect(raw, "lens.csv");
  for (int i = 0; i < 5; ++i) CHECK(Detect(raw, "lens.csv") == first);
}

TEST_CASE("mapping config rejects duplicate canonical targets") {
  CHECK_THROWS_AS(bt::FieldMapping::FromJson(
                      R"({"source":"scopus","columns":{"A":"Title","B":"Title"}})"),
                  bt::Error);
}
