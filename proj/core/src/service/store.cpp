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

#include "bibliotext/service/store.hpp"

#include <openssl/evp.h>
#include <sqlite3.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "bibliotext/error.hpp"

namespace bibliotext::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) {
      throw Error(ErrorCode::kIo, std::string("sqlite prepare: ") + sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& Bind(int index, std::string_view text) {
    sqlite3_bind_text(stmt_, index, text.data(), static_cast<int>(text.size()),
                      SQLITE_TRANSIENT);
    return *this;
  }
  Statement& Bind(int index, std::int64_t value) {
    sqlite3_bind_int64(stmt_, index, value);
    return *this;
  }

  // True while rows remain.
  bool Step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw Error(ErrorCode::kIo, std::string("sqlite step: ") + sqlite3_errmsg(db_));
  }

  std::string Text(int column) const {
    const auto* text = sqlite3_column_text(stmt_, column);
    return text ? reinterpret_cast<const char*>(text) : "";
  }
  std::int64_t Int(int column) const { return sqlite3_column_int64(stmt_, column); }
  bool IsNull(int column) const {
    return sqlite3_column_type(stmt_, column) == SQLITE_NULL;
  }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

std::string RandomToken() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << std::hex;
  for (int i = 0; i < 2; ++i) {
    out.width(16);
    out.fill('0');
    out << rng();
  }
  return out.str();
}

void WriteFileAtomic(const fs::path& path, std::string_view content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::optional<std::string> ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool IsPlainName(const std::string& name) {
  return !name.empty() && name.find('/') == std::string::npos &&
         name.find('\\') == std::string::npos && name != "." && name != "..";
}

constexpr const char* kJobColumns =
    "id, dataset_id, analysis, params, state, submitted_ms, started_ms, "
    "finished_ms, error_code, error";

JobRecord ReadJob(const Statement& stmt) {
  JobRecord job;
  job.id = stmt.Text(0);
  job.dataset_id = stmt.Text(1);
  job.analysis = ParseAnalysisKind(stmt.Text(2)).value_or(AnalysisKind::kSunburst);
  job.params = json::parse(stmt.Text(3));
  job.state = ParseJobState(stmt.Text(4)).value_or(JobState::kFailed);
  job.submitted_ms = stmt.Int(5);
  if (!stmt.IsNull(6)) job.started_ms = stmt.Int(6);
  if (!stmt.IsNull(7)) job.finished_ms = stmt.Int(7);
  job.error_code = stmt.Text(8);
  job.error = stmt.Text(9);
  return job;
}

}  // namespace

std::string_view JobStateName(JobState state) {
  switch (state) {
    case JobState::kQueued: return "queued";
    case JobState::kRunning: return "running";
    case JobState::kDone: return "done";
    case JobState::kFailed: return "failed";
  }
  return "failed";
}

std::optional<JobState> ParseJobState(std::string_view name) {
  for (JobState state : {JobState::kQueued, JobState::kRunning, JobState::kDone,
                         JobState::kFailed}) {
    if (JobStateName(state) == name) return state;
  }
  return std::nullopt;
}

json DatasetRecord::ToJson() const {
  return {{"id", id},
          {"filename", filename},
          {"source", source},
          {"rows", rows},
          {"uploaded_ms", uploaded_ms},
          {"columns", columns},
          {"capabilities", capabilities},
          {"warnings", warnings}};
}

json JobRecord::ToJson() const {
  json echo = params;
  if (echo.is_object() && echo.contains("embeddings_csv")) {
    echo["embeddings_csv"] = "<" + std::to_string(
        echo["embeddings_csv"].get_ref<const std::string&>().size()) + " bytes>";
  }
  json out = {{"id", id},
              {"dataset_id", dataset_id},
              {"analysis", AnalysisKindName(analysis)},
              {"params", std::move(echo)},
              {"state", JobStateName(state)},
              {"submitted_ms", submitted_ms},
              {"started_ms", started_ms ? json(*started_ms) : json(nullptr)},
              {"finished_ms", finished_ms ? json(*finished_ms) : json(nullptr)}};
  if (state == JobState::kFailed) {
    out["error"] = {{"code", error_code}, {"message", error}};
  }
  if (state == JobState::kDone) out["result_url"] = "/jobs/" + id + "/result";
  return out;
}

std::string Sha256Hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIo, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::int64_t NowMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

Store::Store(fs::path data_dir) : data_dir_(std::move(data_dir)) {
  fs::create_directories(data_dir_ / "datasets");
  fs::create_directories(data_dir_ / "results");
  const fs::path db_path = data_dir_ / "bibliotext.db";
  if (sqlite3_open_v2(db_path.c_str(), &db_,
                      SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX,
                      nullptr) != SQLITE_OK) {
    const std::string message = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    throw Error(ErrorCode::kIo, "cannot open " + db_path.string() + ": " + message);
  }
  sqlite3_busy_timeout(db_, 5000);
  Exec("PRAGMA journal_mode=WAL");
  Exec("PRAGMA synchronous=NORMAL");
  Exec(
      "CREATE TABLE IF NOT EXISTS datasets ("
      " id TEXT PRIMARY KEY, filename TEXT NOT NULL, source TEXT NOT NULL,"
      " rows INTEGER NOT NULL, info TEXT NOT NULL, uploaded_ms INTEGER NOT NULL)");
  Exec(
      "CREATE TABLE IF NOT EXISTS jobs ("
      " seq INTEGER PRIMARY KEY AUTOINCREMENT, id TEXT UNIQUE NOT NULL,"
      " dataset_id TEXT NOT NULL, analysis TEXT NOT NULL, params TEXT NOT NULL,"
      " state TEXT NOT NULL, submitted_ms INTEGER NOT NULL, started_ms INTEGER,"
      " finished_ms INTEGER, error_code TEXT, error TEXT)");
  Exec(
      "CREATE TABLE IF NOT EXISTS job_events ("
      " seq INTEGER PRIMARY KEY AUTOINCREMENT, job_id TEXT NOT NULL,"
      " state TEXT NOT NULL, at_ms INTEGER NOT NULL)");
  Exec("CREATE INDEX IF NOT EXISTS job_events_by_job ON job_events(job_id)");
}

Store::~Store() { sqlite3_close(db_); }

void Store::Exec(const char* sql) {
  char* message = nullptr;
  if (sqlite3_exec(db_, sql, nullptr, nullptr, &message) != SQLITE_OK) {
    const std::string text = message ? message : "unknown";
    sqlite3_free(message);
    throw Error(ErrorCode::kIo, "sqlite: " + text);
  }
}

DatasetRecord Store::PutDataset(std::string_view raw, const std::string& filename,
                                const Dataset& dataset) {
  DatasetRecord record;
  record.id = Sha256Hex(raw);
  if (auto existing = GetDataset(record.id)) return *existing;

  record.filename = filename;
  record.source = std::string(SourceKindName(dataset.source()));
  record.rows = dataset.row_count();
  record.uploaded_ms = NowMs();
  record.capabilities = CheckCapabilities(dataset).ToJson();
  record.columns = json::array();
  for (const auto& column : dataset.column_catalog()) {
    record.columns.push_back({{"name", column.name},
                              {"kind", ColumnKindName(column.kind)},
                              {"non_empty", column.non_empty}});
  }
  record.warnings = dataset.warnings();

  WriteFileAtomic(data_dir_ / "datasets" / record.id, raw);
  const json info = {{"capabilities", record.capabilities},
                     {"columns", record.columns},
                     {"warnings", record.warnings}};
  std::lock_guard lock(mu_);
  Statement stmt(db_,
                 "INSERT OR IGNORE INTO datasets (id, filename, source, rows, info,"
                 " uploaded_ms) VALUES (?, ?, ?, ?, ?, ?)");
  stmt.Bind(1, record.id)
      .Bind(2, record.filename)
      .Bind(3, record.source)
      .Bind(4, static_cast<std::int64_t>(record.rows))
      .Bind(5, info.dump())
      .Bind(6, record.uploaded_ms);
  stmt.Step();
  return record;
}

std::optional<DatasetRecord> Store::GetDataset(const std::string& id) {
  std::lock_guard lock(mu_);
  Statement stmt(db_,
                 "SELECT id, filename, source, rows, info, uploaded_ms FROM datasets"
                 " WHERE id = ?");
  stmt.Bind(1, id);
  if (!stmt.Step()) return std::nullopt;
  DatasetRecord record;
  record.id = stmt.Text(0);
  record.filename = stmt.Text(1);
  record.source = stmt.Text(2);
  record.rows = static_cast<std::size_t>(stmt.Int(3));
  const json info = json::parse(stmt.Text(4));
  record.capabilities = info.at("capabilities");
  record.columns = info.at("columns");
  record.warnings = info.at("warnings").get<std::vector<std::string>>();
  record.uploaded_ms = stmt.Int(5);
  return record;
}

std::optional<std::string> Store::ReadDatasetBytes(const std::string& id) {
  if (!IsPlainName(id)) return std::nullopt;
  return ReadFile(data_dir_ / "datasets" / id);
}

bool Store::DeleteDataset(const std::string& id) {
  {
    std::lock_guard lock(mu_);
    Statement stmt(db_, "DELETE FROM datasets WHERE id = ?");
    stmt.Bind(1, id);
    stmt.Step();
    if (sqlite3_changes(db_) == 0) return false;
  }
  std::error_code ec;
  fs::remove(data_dir_ / "datasets" / id, ec);
  return true;
}

JobRecord Store::CreateJob(const std::string& dataset_id, AnalysisKind analysis,
                           const json& params) {
  JobRecord job;
  job.id = RandomToken();
  job.dataset_id = dataset_id;
  job.analysis = analysis;
  job.params = params.is_null() ? json::object() : params;
  job.state = JobState::kQueued;
  job.submitted_ms = NowMs();

  std::lock_guard lock(mu_);
  Exec("BEGIN IMMEDIATE");
  try {
    Statement insert(db_,
                     "INSERT INTO jobs (id, dataset_id, analysis, params, state,"
                     " submitted_ms) VALUES (?, ?, ?, ?, 'queued', ?)");
    insert.Bind(1, job.id)
        .Bind(2, job.dataset_id)
        .Bind(3, AnalysisKindName(analysis))
        .Bind(4, job.params.dump())
        .Bind(5, job.submitted_ms);
    insert.Step();
    Statement event(db_,
                    "INSERT INTO job_events (job_id, state, at_ms) VALUES (?, 'queued', ?)");
    event.Bind(1, job.id).Bind(2, job.submitted_ms);
    event.Step();
    Exec("COMMIT");
  } catch (...) {
    Exec("ROLLBACK");
    throw;
  }
  return job;
}

std::optional<JobRecord> Store::GetJob(const std::string& id) {
  std::lock_guard lock(mu_);
  const std::string sql = std::string("SELECT ") + kJobColumns + " FROM jobs WHERE id = ?";
  Statement stmt(db_, sql.c_str());
  stmt.Bind(1, id);
  if (!stmt.Step()) return std::nullopt;
  return ReadJob(stmt);
}

bool Store::Transition(const std::string& id, JobState from, JobState to,
                       std::string_view code, const std::string& message) {
  const std::int64_t now = NowMs();
  std::lock_guard lock(mu_);
  Exec("BEGIN IMMEDIATE");
  try {
    const char* sql =
        to == JobState::kRunning
            ? "UPDATE jobs SET state = ?, started_ms = ? WHERE id = ? AND state = ?"
            : "UPDATE jobs SET state = ?, finished_ms = ?, error_code = ?, error = ?"
              " WHERE id = ? AND state = ?";
    Statement update(db_, sql);
    if (to == JobState::kRunning) {
      update.Bind(1, JobStateName(to)).Bind(2, now).Bind(3, id).Bind(4, JobStateName(from));
    } else {
      update.Bind(1, JobStateName(to))
          .Bind(2, now)
          .Bind(3, code)
          .Bind(4, message)
          .Bind(5, id)
          .Bind(6, JobStateName(from));
    }
    update.Step();
    const bool changed = sqlite3_changes(db_) > 0;
    if (changed) {
      Statement event(db_, "INSERT INTO job_events (job_id, state, at_ms) VALUES (?, ?, ?)");
      event.Bind(1, id).Bind(2, JobStateName(to)).Bind(3, now);
      event.Step();
    }
    Exec("COMMIT");
    return changed;
  } catch (...) {
    Exec("ROLLBACK");
    throw;
  }
}

bool Store::MarkRunning(const std::string& id) {
  return Transition(id, JobState::kQueued, JobState::kRunning, "", "");
}

bool Store::MarkDone(const std::string& id, const std::string& result_json,
                     const std::vector<OutputFile>& files) {
  if (!IsPlainName(id)) return false;
  // Results are overwritten wholesale so a re-executed job converges.
  const fs::path dir = data_dir_ / "results" / id;
  fs::create_directories(dir);
  for (const auto& file : files) {
    if (!IsPlainName(file.name)) continue;
    WriteFileAtomic(dir / file.name, file.content);
  }
  WriteFileAtomic(dir / "result.json", result_json);
  return Transition(id, JobState::kRunning, JobState::kDone, "", "");
}

bool Store::MarkFailed(const std::string& id, std::string_view code,
                       const std::string& message) {
  return Transition(id, JobState::kRunning, JobState::kFailed, code, message);
}

std::vector<std::string> Store::JobsInState(JobState state) {
  std::lock_guard lock(mu_);
  Statement stmt(db_, "SELECT id FROM jobs WHERE state = ? ORDER BY seq");
  stmt.Bind(1, JobStateName(state));
  std::vector<std::string> ids;
  while (stmt.Step()) ids.push_back(stmt.Text(0));
  return ids;
}

std::vector<JobEvent> Store::Events(const std::string& job_id) {
  std::lock_guard lock(mu_);
  Statement stmt(db_,
                 "SELECT seq, job_id, state, at_ms FROM job_events WHERE job_id = ?"
                 " ORDER BY seq");
  stmt.Bind(1, job_id);
  std::vector<JobEvent> events;
  while (stmt.Step()) {
    events.push_back({stmt.Int(0), stmt.Text(1),
                      ParseJobState(stmt.Text(2)).value_or(JobState::kFailed),
                      stmt.Int(3)});
  }
  return events;
}

std::optional<std::string> Store::ReadResult(const std::string& job_id) {
  return ReadResultFile(job_id, "result.json");
}

std::optional<std::string> Store::ReadResultFile(const std::string& job_id,
                                                 const std::string& name) {
  if (!IsPlainName(job_id) || !IsPlainName(name)) return std::nullopt;
  return ReadFile(data_dir_ / "results" / job_id / name);
}

std::vector<std::string> Store::ResultFiles(const std::string& job_id) {
  std::vector<std::string> names;
  if (!IsPlainName(job_id)) return names;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(data_dir_ / "results" / job_id, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.ends_with(".tmp")) continue;
    names.push_back(name);
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace bibliotext::service
