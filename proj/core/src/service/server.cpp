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

#include "bibliotext/service/server.hpp"

#include <httplib.h>

#include <cstdlib>
#include <thread>

#include "bibliotext/engine.hpp"
#include "bibliotext/error.hpp"
#include "bibliotext/service/job_queue.hpp"
#include "bibliotext/service/store.hpp"

namespace bibliotext::service {

namespace {

using nlohmann::json;

constexpr const char* kJsonType = "application/json";

constexpr std::size_t kMultipartSlack = 64 * 1024;

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", kJsonType);
}

void ReplyError(httplib::Response& res, int status, std::string_view code,
                const std::string& message, json extra = json::object()) {
  extra["error"] = code;
  extra["message"] = message;
  Reply(res, status, extra);
}

int StatusForParseError(ErrorCode code) {
  return code == ErrorCode::kUndecodableFile ? 415 : 422;
}

std::string EnvOr(const char* name, const std::string& fallback) {
  const char* value = std::getenv(name);
  return value != nullptr && *value != '\0' ? value : fallback;
}

}  // namespace

ServiceConfig ServiceConfig::FromEnv() {
  ServiceConfig config;
  config.data_dir = EnvOr("BIBLIOTEXT_DATA_DIR", config.data_dir.string());
  config.host = EnvOr("BIBLIOTEXT_HOST", config.host);
  config.port = std::stoi(EnvOr("BIBLIOTEXT_PORT", std::to_string(config.port)));
  config.workers = std::stoul(EnvOr("BIBLIOTEXT_WORKERS", "0"));
  config.upload_limit =
      std::stoull(EnvOr("BIBLIOTEXT_UPLOAD_LIMIT", std::to_string(config.upload_limit)));
  config.cors_origin = EnvOr("BIBLIOTEXT_CORS_ORIGIN", config.cors_origin);
  return config;
}

struct Server::Impl {
  Impl(ServiceConfig cfg, const Resources& res)
      : config(std::move(cfg)),
        resources(res),
        store(config.data_dir),
        queue(store, resources,
              config.workers != 0 ? config.workers
                                  : std::max(1u, std::thread::hardware_concurrency())) {
    Routes();
    queue.Recover();
  }

  void Routes();
  void Upload(const httplib::Request& req, httplib::Response& res);
  void SubmitJob(const httplib::Request& req, httplib::Response& res);
  void JobResult(const std::string& id, httplib::Response& res,
                 const std::string* part);

  ServiceConfig config;
  const Resources& resources;
  Store store;
  JobQueue queue;
  httplib::Server http;
};

void Server::Impl::Routes() {
  // Slack for multipart framing; the file part itself is checked in Upload.
  http.set_payload_max_length(config.upload_limit + kMultipartSlack);
  http.set_default_headers({
      {"Access-Control-Allow-Origin", config.cors_origin},
      {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
      {"Access-Control-Allow-Headers", "Content-Type"},
  });
  http.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          ReplyError(res, 500, "Internal", e.what());
        } catch (...) {
          ReplyError(res, 500, "Internal", "unknown error");
        }
      });
  http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    if (res.status == 413) {
      ReplyError(res, 413, "PayloadTooLarge", "upload exceeds the configured limit");
    } else if (res.status == 404) {
      ReplyError(res, 404, "NotFound", "no such route");
    }
  });
  http.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  http.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    Reply(res, 200, {{"status", "ok"}});
  });

  http.Post("/datasets", [this](const httplib::Request& req, httplib::Response& res) {
    Upload(req, res);
  });

  http.Get(R"(/datasets/([0-9a-f]+))",
           [this](const httplib::Request& req, httplib::Response& res) {
             const auto record = store.GetDataset(req.matches[1]);
             if (!record) return ReplyError(res, 404, "NotFound", "unknown dataset");
             Reply(res, 200, record->ToJson());
           });

  http.Get(R"(/datasets/([0-9a-f]+)/capabilities)",
           [this](const httplib::Request& req, httplib::Response& res) {
             const auto record = store.GetDataset(req.matches[1]);
             if (!record) return ReplyError(res, 404, "NotFound", "unknown dataset");
             Reply(res, 200, record->capabilities);
           });

  http.Delete(R"(/datasets/([0-9a-f]+))",
              [this](const httplib::Request& req, httplib::Response& res) {
                const std::string id = req.matches[1];
                if (!store.DeleteDataset(id)) {
                  return ReplyError(res, 404, "NotFound", "unknown dataset");
                }
                queue.ForgetDataset(id);
                res.status = 204;
              });

  http.Post("/jobs", [this](const httplib::Request& req, httplib::Response& res) {
    SubmitJob(req, res);
  });

  http.Get(R"(/jobs/([0-9a-f]+))",
           [this](const httplib::Request& req, httplib::Response& res) {
             const auto job = store.GetJob(req.matches[1]);
             if (!job) return ReplyError(res, 404, "NotFound", "unknown job");
             Reply(res, 200, job->ToJson());
           });

  http.Get(R"(/jobs/([0-9a-f]+)/events)",
           [this](const httplib::Request& req, httplib::Response& res) {
             const std::string id = req.matches[1];
             if (!store.GetJob(id)) return ReplyError(res, 404, "NotFound", "unknown job");
             json events = json::array();
             for (const auto& event : store.Events(id)) {
               events.push_back({{"seq", event.seq},
                                 {"state", JobStateName(event.state)},
                                 {"at_ms", event.at_ms}});
             }
             Reply(res, 200, {{"job_id", id}, {"events", std::move(events)}});
           });

  http.Get(R"(/jobs/([0-9a-f]+)/result)",
           [this](const httplib::Request& req, httplib::Response& res) {
             JobResult(req.matches[1], res, nullptr);
           });

  http.Get(R"(/jobs/([0-9a-f]+)/result\.csv)",
           [this](const httplib::Request& req, httplib::Response& res) {
             const std::string part =
                 req.has_param("part") ? req.get_param_value("part") : "";
             JobResult(req.matches[1], res, &part);
           });
}

void Server::Impl::Upload(const httplib::Request& req, httplib::Response& res) {
  std::string filename;
  const std::string* body = nullptr;
  std::string file_content;
  if (req.is_multipart_form_data()) {
    if (!req.has_file("file")) {
      return ReplyError(res, 400, "InvalidParams", "multipart field 'file' is required");
    }
    const auto file = req.get_file_value("file");
    filename = file.filename;
    file_content = file.content;
    body = &file_content;
  } else {
    filename = req.has_param("filename") ? req.get_param_value("filename") : "upload";
    body = &req.body;
  }
  if (body->size() > config.upload_limit) {
    return ReplyError(res, 413, "PayloadTooLarge", "upload exceeds the configured limit");
  }

  std::shared_ptr<const Dataset> dataset;
  try {
    dataset = std::make_shared<const Dataset>(
        LoadDataset(*body, filename, resources.mappings));
  } catch (const MalformedRowError& e) {
    return ReplyError(res, 422, ErrorCodeName(e.code()), e.what(),
                      {{"row", e.row()}});
  } catch (const Error& e) {
    return ReplyError(res, StatusForParseError(e.code()), ErrorCodeName(e.code()),
                      e.what());
  }
  const DatasetRecord record = store.PutDataset(*body, filename, *dataset);
  queue.CacheDataset(record.id, dataset);
  Reply(res, 201, record.ToJson());
}

void Server::Impl::SubmitJob(const httplib::Request& req, httplib::Response& res) {
  json body;
  try {
    body = json::parse(req.body);
  } catch (const json::parse_error& e) {
    return ReplyError(res, 400, "InvalidParams", std::string("malformed JSON: ") + e.what());
  }
  if (!body.is_object() || !body.contains("dataset_id") ||
      !body["dataset_id"].is_string() || !body.contains("analysis") ||
      !body["analysis"].is_string()) {
    return ReplyError(res, 400, "InvalidParams",
                      "body needs string fields dataset_id and analysis");
  }
  const auto kind = ParseAnalysisKind(body["analysis"].get<std::string>());
  if (!kind) {
    return ReplyError(res, 400, "InvalidParams",
                      "unknown analysis '" + body["analysis"].get<std::string>() + "'");
  }
  const std::string dataset_id = body["dataset_id"];
  const auto record = store.GetDataset(dataset_id);
  if (!record) return ReplyError(res, 404, "NotFound", "unknown dataset");

  const CapabilityReport report = CapabilityReport::FromJson(record->capabilities);
  const AnalysisCapability& capability = report.at(RequiredCapability(*kind));
  if (!capability.eligible) {
    return ReplyError(res, 409, "NotEligible",
                      std::string(AnalysisKindName(*kind)) + " is not available",
                      {{"missing_fields", capability.missing_fields}});
  }

  const json params = body.value("params", json::object());
  try {
    NormalizeParams(*kind, params);
  } catch (const Error& e) {
    return ReplyError(res, 400, ErrorCodeName(e.code()), e.what());
  }
  const JobRecord job = store.CreateJob(dataset_id, *kind, params);
  queue.Enqueue(job.id);
  res.set_header("Location", "/jobs/" + job.id);
  Reply(res, 202, {{"job_id", job.id}, {"state", JobStateName(job.state)}});
}

void Server::Impl::JobResult(const std::string& id, httplib::Response& res,
                             const std::string* part) {
  const auto job = store.GetJob(id);
  if (!job) return ReplyError(res, 404, "NotFound", "unknown job");
  if (job->state == JobState::kFailed) {
    return ReplyError(res, 409, "JobFailed", job->error,
                      {{"state", "failed"}, {"code", job->error_code}});
  }
  if (job->state != JobState::kDone) {
    return ReplyError(res, 409, "NotReady", "job is " + std::string(JobStateName(job->state)),
                      {{"state", JobStateName(job->state)}});
  }
  if (part == nullptr) {
    const auto content = store.ReadResult(id);
    if (!content) return ReplyError(res, 500, "Internal", "result file missing");
    res.status = 200;
    res.set_content(*content, kJsonType);
    return;
  }
  std::vector<std::string> csv_parts;
  for (const auto& name : store.ResultFiles(id)) {
    if (name.ends_with(".csv")) csv_parts.push_back(name.substr(0, name.size() - 4));
  }
  std::string chosen = *part;
  if (chosen.ends_with(".csv")) chosen.resize(chosen.size() - 4);
  if (chosen.empty() && !csv_parts.empty()) chosen = csv_parts.front();
  if (std::find(csv_parts.begin(), csv_parts.end(), chosen) == csv_parts.end()) {
    return ReplyError(res, 404, "NotFound", "no such result part",
                      {{"parts", csv_parts}});
  }
  const auto content = store.ReadResultFile(id, chosen + ".csv");
  if (!content) return ReplyError(res, 500, "Internal", "result file missing");
  res.status = 200;
  res.set_header("Content-Disposition", "attachment; filename=\"" + chosen + ".csv\"");
  res.set_content(*content, "text/csv");
}

Server::Server(ServiceConfig config, const Resources& resources)
    : impl_(std::make_unique<Impl>(std::move(config), resources)) {}

Server::~Server() {
  Stop();
  impl_->queue.Stop();
}

int Server::Bind() {
  if (impl_->config.port == 0) {
    const int port = impl_->http.bind_to_any_port(impl_->config.host);
    if (port > 0) impl_->config.port = port;
    return port;
  }
  return impl_->http.bind_to_port(impl_->config.host, impl_->config.port)
             ? impl_->config.port
             : -1;
}

bool Server::ListenAfterBind() { return impl_->http.listen_after_bind(); }

void Server::Stop() { impl_->http.stop(); }

const ServiceConfig& Server::config() const { return impl_->config; }

}  // namespace bibliotext::service
