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

// Persistence for the HTTP service: content-addressed dataset files plus an
// SQLite database holding dataset metadata, jobs and the job event log.
// Results live as files under results/<job id>/.

#ifndef BIBLIOTEXT_SERVICE_STORE_HPP_
#define BIBLIOTEXT_SERVICE_STORE_HPP_

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bibliotext/engine.hpp"

struct sqlite3;

namespace bibliotext::service {

enum class JobState { kQueued, kRunning, kDone, kFailed };

std::string_view JobStateName(JobState state);
std::optional<JobState> ParseJobState(std::string_view name);

struct DatasetRecord {
  std::string id;  // SHA-256 of the uploaded bytes
  std::string filename;
  std::string source;
  std::size_t rows = 0;
  std::int64_t uploaded_ms = 0;
  nlohmann::json capabilities;
  nlohmann::json columns;
  std::vector<std::string> warnings;

  nlohmann::json ToJson() const;
};

struct JobRecord {
  std::string id;
  std::string dataset_id;
  AnalysisKind analysis = AnalysisKind::kSunburst;
  nlohmann::json params;
  JobState state = JobState::kQueued;
  std::int64_t submitted_ms = 0;
  std::optional<std::int64_t> started_ms;
  std::optional<std::int64_t> finished_ms;
  std::string error_code;
  std::string error;

  // Params echo omits bulky inline payloads.
  nlohmann::json ToJson() const;
};

struct JobEvent {
  std::int64_t seq = 0;
  std::string job_id;
  JobState state = JobState::kQueued;
  std::int64_t at_ms = 0;
};

std::string Sha256Hex(std::string_view bytes);
std::int64_t NowMs();

// Thread-safe; one connection guarded by a mutex.
class Store {
 public:
  explicit Store(std::filesystem::path data_dir);
  ~Store();
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  const std::filesystem::path& data_dir() const { return data_dir_; }

  // Idempotent on content: re-uploading identical bytes returns the
  // existing record.
  DatasetRecord PutDataset(std::string_view raw, const std::string& filename,
                           const Dataset& dataset);
  std::optional<DatasetRecord> GetDataset(const std::string& id);
  std::optional<std::string> ReadDatasetBytes(const std::string& id);
  bool DeleteDataset(const std::string& id);

  JobRecord CreateJob(const std::string& dataset_id, AnalysisKind analysis,
                      const nlohmann::json& params);
  std::optional<JobRecord> GetJob(const std::string& id);

  // queued -> running. Returns false when the job is not queued.
  bool MarkRunning(const std::string& id);
  // running -> done; `files` land under results/<id>/ before the state flips.
  bool MarkDone(const std::string& id, const std::string& result_json,
                const std::vector<OutputFile>& files);
  // running -> failed.
  bool MarkFailed(const std::string& id, std::string_view code,
                  const std::string& message);

  // Ids in submission order.
  std::vector<std::string> JobsInState(JobState state);
  std::vector<JobEvent> Events(const std::string& job_id);

  std::optional<std::string> ReadResult(const std::string& job_id);
  std::optional<std::string> ReadResultFile(const std::string& job_id,
                                            const std::string& name);
  std::vector<std::string> ResultFiles(const std::string& job_id);

 private:
  bool Transition(const std::string& id, JobState from, JobState to,
                  std::string_view code, const std::string& message);
  void Exec(const char* sql);

  std::filesystem::path data_dir_;
  sqlite3* db_ = nullptr;
  std::mutex mu_;
};

}  // namespace bibliotext::service

#endif  // BIBLIOTEXT_SERVICE_STORE_HPP_
