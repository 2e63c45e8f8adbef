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
#include <cstdlib>
#include <future>
#include <set>

#include "bibliotext/engine.hpp"
#include "bibliotext/service/store.hpp"
#include "service_harness.hpp"

namespace bt = bibliotext;
namespace bt_test = bibliotext::testing;
using nlohmann::json;

namespace {

// Comma-joined states from the persisted event log.
std::string EventStates(httplib::Client& client, const std::string& job) {
  auto res = client.Get("/jobs/" + job + "/events");
  REQUIRE(res);
  REQUIRE(res->status == 200);
  std::string states;
  std::int64_t last_seq = -1;
  std::int64_t last_at = 0;
  const json doc = json::parse(res->body);
  for (const auto& e : doc.at("events")) {
    CHECK(e.at("seq").get<std::int64_t>() > last_seq);
    CHECK(e.at("at_ms").get<std::int64_t>() >= last_at);
    last_seq = e.at("seq");
    last_at = e.at("at_ms");
    if (!states.empty()) states += ",";
    states += e.at("state").get<std::string>();
  }
  return states;
}

const std::string kHappyPath = "queued,running,done";

std::string ErrorCode(const httplib::Result& res) {
  return json::parse(res->body).at("error");
}

}  // namespace

TEST_CASE("upload, check, run LDA and fetch the result") {
  bt_test::TempDir dir("svc-e2e");
  bt_test::RunningServer server(bt_test::ConfigFor(dir.path()));
  auto client = server.Client();

  auto health = client.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);

  const auto start = std::chrono::steady_clock::now();
  const std::string corpus = bt_test::SyntheticScopusCsv(1000, 5);
  auto [status, dataset] = bt_test::Upload(client, "scopus_1k.csv", corpus);
  REQUIRE(status == 201);
  CHECK(dataset.at("source") == "scopus");
  CHECK(dataset.at("rows") == 1000);
  const std::string id = dataset.at("id");
  CHECK(id == bt::service::Sha256Hex(corpus));

  auto caps = client.Get("/datasets/" + id + "/capabilities");
  REQUIRE(caps);
  CHECK(caps->status == 200);
  CHECK(json::parse(caps->body).at("topic_modeling").at("eligible") == true);

  auto [submitted, job] = bt_test::Submit(client, id, "topic_lda", {{"k", 2}, {"seed", 3}});
  REQUIRE(submitted == 202);
  const std::string job_id = job.at("job_id");
  const json final_state = bt_test::WaitForJob(client, job_id);
  REQUIRE(final_state.is_object());
  CHECK(final_state.at("state") == "done");

  auto result = client.Get("/jobs/" + job_id + "/result");
  REQUIRE(result);
  CHECK(result->status == 200);
  const json doc = json::parse(result->body);
  CHECK(doc.at("theta").size() == 1000);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("1k-document LDA round trip took " << seconds << " s");
  CHECK(seconds < 90.0);

  CHECK(EventStates(client, job_id) == kHappyPath);

  auto csv = client.Get("/jobs/" + job_id + "/result.csv?part=top_terms");
  REQUIRE(csv);
  CHECK(csv->status == 200);
  CHECK(csv->body.rfind("topic,rank,term,probability\n", 0) == 0);
  auto missing = client.Get("/jobs/" + job_id + "/result.csv?part=nope");
  REQUIRE(missing);
  CHECK(missing->status == 404);
}

TEST_CASE("twenty concurrent jobs keep their results apart") {
  bt_test::TempDir dir("svc-concurrent");
  bt_test::RunningServer server(bt_test::ConfigFor(dir.path(), 4));
  auto client = server.Client();

  const std::string scopus = bt_test::ReadFile(bt_test::FixturePath("scopus.csv"));
  const std::string wos = bt_test::ReadFile(bt_test::FixturePath("wos.txt"));
  const std::string scopus_id = bt_test::Upload(client, "scopus.csv", scopus).second.at("id");
  const std::string wos_id = bt_test::Upload(client, "wos.txt", wos).second.at("id");

  struct Request {
    std::string dataset;
    const std::string* raw;
    std::string filename;
    bt::AnalysisKind kind;
    json params;
  };
  std::vector<Request> requests;
  for (int i = 0; i < 20; ++i) {
    const bool use_scopus = i % 2 == 0;
    Request r{use_scopus ? scopus_id : wos_id, use_scopus ? &scopus : &wos,
              use_scopus ? "scopus.csv" : "wos.txt", bt::AnalysisKind::kTopicLda,
              json::object()};
    switch (i % 4) {
      case 0:
      case 1:
        r.kind = bt::AnalysisKind::kTopicLda;
        r.params = {{"k", 2 + i % 3}, {"seed", i}, {"iterations", 60}};
        break;
      case 2:
        r.kind = bt::AnalysisKind::kTopicBtm;
        r.params = {{"k", 2}, {"seed", i}, {"iterations", 40}, {"column", "Title"}};
        break;
      default:
        r.kind = bt::AnalysisKind::kNetwork;
        r.params = {{"min_support", 0.02 + 0.01 * (i % 3)}};
        break;
    }
    requests.push_back(std::move(r));
  }

  std::vector<std::future<std::string>> submitted;
  for (const auto& r : requests) {
    submitted.push_back(std::async(std::launch::async, [&server, &r] {
      auto c = server.Client();
      auto [status, body] =
          bt_test::Submit(c, r.dataset, std::string(bt::AnalysisKindName(r.kind)), r.params);
      return status == 202 ? body.at("job_id").get<std::string>()
                           : "status " + std::to_string(status) + ": " + body.dump();
    }));
  }
  std::vector<std::string> ids;
  for (auto& f : submitted) ids.push_back(f.get());
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == 20);

  for (std::size_t i = 0; i < ids.size(); ++i) {
    CAPTURE(i);
    INFO(ids[i]);
    REQUIRE(ids[i].find("status") == std::string::npos);
    const json job = bt_test::WaitForJob(client, ids[i]);
    REQUIRE(job.is_object());
    REQUIRE(job.at("state") == "done");
    auto res = client.Get("/jobs/" + ids[i] + "/result");
    REQUIRE(res);
    const auto& r = requests[i];
    const bt::Dataset ds =
        bt::LoadDataset(*r.raw, r.filename, bt_test::TestResources().mappings);
    const auto expected = bt::RunAnalysis(ds, r.kind, r.params, bt_test::TestResources());
    CHECK(res->body == bt::SerializeResult(expected.result));
    CHECK(EventStates(client, ids[i]) == kHappyPath);
  }
}

TEST_CASE("jobs survive a restart") {
  bt_test::TempDir dir("svc-restart");
  const std::string raw = bt_test::ReadFile(bt_test::FixturePath("scopus.csv"));
  std::string queued_id;
  std::string running_id;
  std::string dataset_id;
  {
    bt::service::Store store(dir.path());
    const bt::Dataset ds =
        bt::LoadDataset(raw, "scopus.csv", bt_test::TestResources().mappings);
    dataset_id = store.PutDataset(raw, "scopus.csv", ds).id;
    queued_id = store.CreateJob(dataset_id, bt::AnalysisKind::kSunburst, json::object()).id;
    running_id = store
                     .CreateJob(dataset_id, bt::AnalysisKind::kTopicLda,
                                {{"k", 2}, {"iterations", 30}})
                     .id;
    REQUIRE(store.MarkRunning(running_id));
  }
  bt_test::RunningServer server(bt_test::ConfigFor(dir.path(), 2));
  auto client = server.Client();
  for (const auto& id : {queued_id, running_id}) {
    CAPTURE(id);
    const json job = bt_test::WaitForJob(client, id);
    REQUIRE(job.is_object());
    CHECK(job.at("state") == "done");
    CHECK(EventStates(client, id) == kHappyPath);
  }
}

TEST_CASE("error responses") {
  bt_test::TempDir dir("svc-errors");
  auto config = bt_test::ConfigFor(dir.path(), 1);
  config.upload_limit = 64 * 1024;
  bt_test::RunningServer server(config);
  auto client = server.Client();

  SUBCASE("oversized upload") {
    const std::string big(128 * 1024, 'x');
    auto [status, body] = bt_test::Upload(client, "big.csv", "a,b\n" + big + ",1\n");
    CHECK(status == 413);
  }
  SUBCASE("undecodable and malformed uploads") {
    auto [bad_status, bad] = bt_test::Upload(client, "x.csv", "a,b\n\xFF\xFE,1\n");
    CHECK(bad_status == 415);
    CHECK(bad.at("error") == "UndecodableFile");
    auto [mal_status, mal] = bt_test::Upload(client, "x.csv", "a,b\n1,2\n1,2,3,4\n");
    CHECK(mal_status == 422);
    CHECK(mal.at("error") == "MalformedRow");
  }
  SUBCASE("job submission failures") {
    const std::string minimal = bt_test::ReadFile(bt_test::FixturePath("custom_minimal.csv"));
    auto [up, dataset] = bt_test::Upload(client, "custom_minimal.csv", minimal);
    REQUIRE(up == 201);
    const std::string id = dataset.at("id");

    auto [s1, b1] = bt_test::Submit(client, id, "sunburst", json::object());
    CHECK(s1 == 409);
    CHECK(b1.at("error") == "NotEligible");
    CHECK(b1.at("missing_fields").size() == 4);

    auto [s2, b2] = bt_test::Submit(client, std::string(64, 'a'), "sunburst", json::object());
    CHECK(s2 == 404);
    auto [s3, b3] = bt_test::Submit(client, id, "astrology", json::object());
    CHECK(s3 == 400);
    auto bad_json = client.Post("/jobs", "{not json", "application/json");
    REQUIRE(bad_json);
    CHECK(bad_json->status == 400);

    auto unknown = client.Get("/jobs/0123456789abcdef/result");
    REQUIRE(unknown);
    CHECK(unknown->status == 404);
    CHECK(ErrorCode(unknown) == "NotFound");

    auto gone = client.Delete("/datasets/" + id);
    REQUIRE(gone);
    CHECK(gone->status == 204);
    auto after = client.Get("/datasets/" + id);
    REQUIRE(after);
    CHECK(after->status == 404);
  }
  SUBCASE("invalid parameters and runtime failures") {
    const std::string raw = bt_test::ReadFile(bt_test::FixturePath("custom_canonical.csv"));
    auto [up, dataset] = bt_test::Upload(client, "custom_canonical.csv", raw);
    REQUIRE(up == 201);
    const std::string id = dataset.at("id");
    auto [s1, b1] = bt_test::Submit(client, id, "topic_lda", {{"k", 1}});
    CHECK(s1 == 400);
    CHECK(b1.at("error") == "InvalidParams");

    auto [s2, b2] =
        bt_test::Submit(client, id, "topic_ctfidf", {{"k", 2}, {"embeddings_csv", "a,b\n"}});
    REQUIRE(s2 == 202);
    const std::string job_id = b2.at("job_id");
    const json job = bt_test::WaitForJob(client, job_id);
    REQUIRE(job.is_object());
    CHECK(job.at("state") == "failed");
    CHECK(job.at("error").at("code") == "MissingHeader");
    auto res = client.Get("/jobs/" + job_id + "/result");
    REQUIRE(res);
    CHECK(res->status == 409);
    CHECK(ErrorCode(res) == "JobFailed");
    CHECK(EventStates(client, job_id) ==
          "queued,running,failed");
  }
}

TEST_CASE("CLI and service outputs are byte-identical") {
  bt_test::TempDir dir("svc-cli");
  bt_test::RunningServer server(bt_test::ConfigFor(dir.path(), 2));
  auto client = server.Client();
  const auto fixture = bt_test::FixturePath("scopus.csv");
  const std::string id =
      bt_test::Upload(client, "scopus.csv", bt_test::ReadFile(fixture)).second.at("id");

  struct Case {
    std::string subcommand;
    std::string analysis;
    std::string flags;
    json params;
  };
  const std::vector<Case> cases = {
      {"lda", "topic_lda", "--k 3 --seed 11 --iterations 80", {{"k", 3}, {"seed", 11}, {"iterations", 80}}},
      {"btm", "topic_btm", "--k 2 --seed 5 --iterations 40 --column Title",
       {{"k", 2}, {"seed", 5}, {"iterations", 40}, {"column", "Title"}}},
      {"stem", "keywords_stem", "--method stem", {{"method", "stem"}}},
      {"net", "network", "--min_support 0.05", {{"min_support", 0.05}}},
      {"sunburst", "sunburst", "--year_min 2018", {{"year_min", 2018}}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.subcommand);
    const auto out = dir.path() / ("cli-" + c.subcommand);
    const std::string command = std::string("\"") + BIBLIOTEXT_CLI_PATH + "\" " +
                                c.subcommand + " \"" + fixture.string() + "\" " + c.flags +
                                " --out \"" + out.string() + "\" > /dev/null";
    REQUIRE(std::system(command.c_str()) == 0);

    auto [status, job] = bt_test::Submit(client, id, c.analysis, c.params);
    REQUIRE(status == 202);
    const std::string job_id = job.at("job_id");
    REQUIRE(bt_test::WaitForJob(client, job_id).at("state") == "done");

    auto res = client.Get("/jobs/" + job_id + "/result");
    REQUIRE(res);
    CHECK(res->body == bt_test::ReadFile(out / "result.json"));
    for (const auto& entry : std::filesystem::directory_iterator(out)) {
      const std::string name = entry.path().filename().string();
      if (!name.ends_with(".csv")) continue;
      auto part = client.Get("/jobs/" + job_id + "/result.csv?part=" +
                             name.substr(0, name.size() - 4));
      REQUIRE(part);
      CHECK(part->body == bt_test::ReadFile(entry.path()));
    }
  }
}
