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


// End-to-end tests of the HTTP service against an in-process server.

#ifndef BIBLIOTEXT_TESTS_SERVICE_HARNESS_HPP_
#define BIBLIOTEXT_TESTS_SERVICE_HARNESS_HPP_

#include <httplib.h>

#include <chrono>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "bibliotext/service/server.hpp"
#include "test_support.hpp"

namespace bibliotext::testing {

// Server listening on a free loopback port for the lifetime of the object.
class RunningServer {
 public:
  explicit RunningServer(service::ServiceConfig config)
      : server_(Prepare(std::move(config)), TestResources()) {
    port_ = server_.Bind();
    if (port_ <= 0) throw std::runtime_error("bind failed");
    thread_ = std::thread([this] { server_.ListenAfterBind(); });
  }
  ~RunningServer() {
    server_.Stop();
    if (thread_.joinable()) thread_.join();
  }
  RunningServer(const RunningServer&) = delete;
  RunningServer& operator=(const RunningServer&) = delete;

  httplib::Client Client() const {
    httplib::Client client("127.0.0.1", port_);
    client.set_read_timeout(60, 0);
    return client;
  }
  int port() const { return port_; }

 private:
  static service::ServiceConfig Prepare(service::ServiceConfig config) {
    config.host = "127.0.0.1";
    config.port = 0;
    return config;
  }

  service::Server server_;
  int port_ = -1;
  std::thread thread_;
};

inline service::ServiceConfig ConfigFor(const std::filesystem::path& dir,
                                        std::size_t workers = 4) {
  service::ServiceConfig config;
  config.data_dir = dir;
  config.workers = workers;
  return config;
}

// Multipart upload; returns the parsed body and status.
inline std::pair<int, nlohmann::json> Upload(httplib::Client& client,
                                             const std::string& filename,
                                             const std::string& content) {
  httplib::MultipartFormDataItems items = {
      {"file", content, filename, "application/octet-stream"}};
  auto res = client.Post("/datasets", items);
  if (!res) return {-1, nullptr};
  return {res->status, nlohmann::json::parse(res->body, nullptr, false)};
}

inline std::pair<int, nlohmann::json> Submit(httplib::Client& client,
                                             const std::string& dataset_id,
                                             const std::string& analysis,
                                             const nlohmann::json& params) {
  const nlohmann::json body = {
      {"dataset_id", dataset_id}, {"analysis", analysis}, {"params", params}};
  auto res = client.Post("/jobs", body.dump(), "application/json");
  if (!res) return {-1, nullptr};
  return {res->status, nlohmann::json::parse(res->body, nullptr, false)};
}

// Polls until the job leaves queued/running; returns the final job document.
inline nlohmann::json WaitForJob(httplib::Client& client, const std::string& job_id,
                                 std::chrono::seconds timeout = std::chrono::seconds(90)) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  while (std::chrono::steady_clock::now() < deadline) {
    auto res = client.Get("/jobs/" + job_id);
    if (res && res->status == 200) {
      auto doc = nlohmann::json::parse(res->body);
      const std::string state = doc.at("state");
      if (state == "done" || state == "failed") return doc;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  return nullptr;
}

}  // namespace bibliotext::testing

#endif  // BIBLIOTEXT_TESTS_SERVICE_HARNESS_HPP_
