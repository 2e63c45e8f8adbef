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
#include <functional>
#include <map>
#include <random>

#include "bibliotext/error.hpp"
#include "bibliotext/sunburst.hpp"
#include "test_support.hpp"

namespace bt = bibliotext;

namespace {

const std::vector<std::string> kColumns = {"Title", "Publication Year", "Citations",
                                           "Document Type", "Source Title"};

bt::BiblioRecord Doc(std::string type, std::string source, int year,
                     std::optional<std::int64_t> citations) {
  bt::BiblioRecord r;
  r.title = "t";
  r.document_type = std::move(type);
  r.source_title = std::move(source);
  r.publication_year = year;
  r.citations = citations;
  return r;
}

bt::Dataset Make(std::vector<bt::BiblioRecord> records) {
  return bt::Dataset(std::move(records), bt::SourceKind::kCustom, kColumns);
}

void Walk(const bt::SunburstNode& node, const std::function<void(const bt::SunburstNode&)>& fn) {
  fn(node);
  for (const auto& child : node.children) Walk(child, fn);
}

std::size_t LeafCount(const bt::SunburstNode& node) {
  std::size_t total = 0;
  Walk(node, [&](const bt::SunburstNode& n) {
    if (n.children.empty()) total += n.count;
  });
  return total;
}

std::map<std::string, std::size_t> CountsByPath(const bt::SunburstNode& root) {
  std::map<std::string, std::size_t> out;
  std::function<void(const bt::SunburstNode&, const std::string&)> rec =
      [&](const bt::SunburstNode& n, const std::string& prefix) {
        const std::string path = prefix + "/" + n.label;
        out[path] = n.count;
        for (const auto& c : n.children) rec(c, path);
      };
  rec(root, "");
  return out;
}

template <typename Fn>
bt::ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const bt::Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return bt::ErrorCode::kIo;
}

}  // namespace

TEST_CASE("parent value is the count-weighted mean of child means") {
  std::vector<bt::BiblioRecord> records = {
      Doc("Article", "S", 2020, 10), Doc("Article", "S", 2020, 10),
      Doc("Article", "S", 2021, 0),  Doc("Article", "S", 2021, 0),
      Doc("Article", "S", 2021, 0)};
  const auto result = bt::BuildSunburst(Make(records));
  const auto& type = result.root.children.at(0);
  const auto& source = type.children.at(0);
  CHECK(source.count == 5);
  CHECK(source.value == doctest::Approx(4.0));
  REQUIRE(source.children.size() == 2);
  // Larger leaf first.
  CHECK(source.children[0].label == "2021");
  CHECK(source.children[0].value == 0.0);
  CHECK(source.children[1].value == 20.0);
  CHECK(source.children[1].mean == 10.0);
  CHECK(result.root.value == doctest::Approx(4.0));
}

TEST_CASE("single document propagates its citations") {
  const auto result = bt::BuildSunburst(Make({Doc("Article", "J", 2019, 7)}));
  Walk(result.root, [](const bt::SunburstNode& n) {
    CHECK(n.count == 1);
    CHECK(n.value == 7.0);
  });
}

TEST_CASE("equal children give the shared value") {
  const auto result = bt::BuildSunburst(
      Make({Doc("Article", "J", 2019, 3), Doc("Review", "K", 2020, 3)}));
  CHECK(result.root.value == doctest::Approx(3.0));
}

TEST_CASE("exclusion, filtering and errors") {
  std::vector<bt::BiblioRecord> records = {Doc("Article", "J", 2019, std::nullopt),
                                           Doc("Review", "K", 2022, 4)};
  records.push_back(records[0]);
  records.back().source_title.reset();
  const auto all = bt::BuildSunburst(Make(records));
  CHECK(all.root.count == 2);
  CHECK(all.excluded_rows == 1);

  const auto filtered = bt::BuildSunburst(Make(records), bt::YearRange{2020, 2025});
  CHECK(filtered.root.count == 1);
  CHECK(filtered.filtered_rows == 1);

  CHECK(CodeOf([&] { bt::BuildSunburst(Make(records), bt::YearRange{1900, 1901}); }) ==
        bt::ErrorCode::kEmptyAfterFilter);
  CHECK(CodeOf([&] { bt::BuildSunburst(Make(records), bt::YearRange{2022, 2020}); }) ==
        bt::ErrorCode::kInvalidParams);
  const bt::Dataset missing({Doc("A", "B", 2000, 1)}, bt::SourceKind::kCustom,
                            {"Title", "Publication Year", "Document Type", "Source Title"});
  CHECK(CodeOf([&] { bt::BuildSunburst(missing); }) == bt::ErrorCode::kNotEligible);
}

TEST_CASE("randomized conservation and weighted-mean bounds") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 1000; ++trial) {
    CAPTURE(trial);
    std::vector<bt::BiblioRecord> records;
    std::size_t included = 0;
    const std::size_t rows = 1 + rng() % 40;
    for (std::size_t i = 0; i < rows; ++i) {
      auto r = Doc("T" + std::to_string(rng() % 3), "S" + std::to_string(rng() % 4),
                   2000 + static_cast<int>(rng() % 5),
                   rng() % 6 == 0 ? std::nullopt
                                  : std::optional<std::int64_t>(rng() % 100));
      if (rng() % 10 == 0) r.document_type.reset();
      if (rng() % 10 == 0) r.publication_year.reset();
      const bool complete = r.document_type && r.source_title && r.publication_year;
      included += complete;
      records.push_back(std::move(r));
    }
    // Keep at least one complete row so the dataset stays eligible.
    records.push_back(Doc("T0", "S0", 2001, 5));
    ++included;

    const auto result = bt::BuildSunburst(Make(records));
    CHECK(result.root.count == included);
    CHECK(result.excluded_rows == records.size() - included);
    CHECK(LeafCount(result.root) == included);
    Walk(result.root, [](const bt::SunburstNode& n) {
      if (n.children.empty()) {
        CHECK(n.value == static_cast<double>(n.total_citations));
        return;
      }
      std::size_t sum = 0;
      double lo = n.children[0].mean;
      double hi = lo;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        const auto& c = n.children[i];
        sum += c.count;
        lo = std::min(lo, c.mean);
        hi = std::max(hi, c.mean);
        if (i > 0) {
          const auto& p = n.children[i - 1];
          CHECK((p.count > c.count || (p.count == c.count && p.label < c.label)));
        }
      }
      CHECK(sum == n.count);
      CHECK(n.value >= lo - 1e-9);
      CHECK(n.value <= hi + 1e-9);
      CHECK(n.value == doctest::Approx(n.mean));
    });

    const auto filtered = bt::BuildSunburst(Make(records), bt::YearRange{2001, 2003});
    const auto before = CountsByPath(result.root);
    for (const auto& [path, count] : CountsByPath(filtered.root)) {
      REQUIRE(before.contains(path));
      CHECK(count <= before.at(path));
    }
  }
}

TEST_CASE("flat form") {
  const auto result = bt::BuildSunburst(
      Make({Doc("Article", "J", 2019, 7), Doc("Article", "K", 2019, 1)}));
  const auto flat = bt::FlattenSunburst(result.root);
  REQUIRE(flat.ids.size() == 6);
  CHECK(flat.parents[0].empty());
  CHECK(flat.values[0] == 2);
  CHECK(flat.colors[0] == doctest::Approx(4.0));
  CHECK(bt::FlatToCsv(flat).rfind("id,label,parent,layer,count,value\n", 0) == 0);
  const auto doc = bt::SunburstToJson(result.root);
  CHECK(doc.at("label") == "All documents");
  CHECK(doc.at("children").size() == 1);
}
