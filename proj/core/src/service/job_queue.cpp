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

#include "bibliotext/service/job_queue.hpp"

#include "bibliotext/error.hpp"

namespace bibliotext::service {

JobQueue::JobQueue(Store& store, const Resources& resources, std::size_t workers)
    : store_(store), resources_(resources) {
  if (workers == 0) workers = 1;
  threads_.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) {
    threads_.emplace_back([this] { WorkerLoop(); });
  }
}

JobQueue::~JobQueue() { Stop(); }

void JobQueue::Stop() {
  {
    std::lock_guard lock(mu_);
    if (stopping_ && threads_.empty()) return;
    stopping_ = true;
  }
  cv_.notify_all();
  for (auto& thread : threads_) {
    if (thread.joinable()) thread.join();
  }
  threads_.clear();
}

void JobQueue::Recover() {
  // Running jobs keep their state; the worker picks them up as-is so the
  // event log never moves backwards.
  for (const auto& id : store_.JobsInState(JobState::kRunning)) Enqueue(id);
  for (const auto& id : store_.JobsInState(JobState::kQueued)) Enqueue(id);
}

void JobQueue::Enqueue(const std::string& job_id) {
  {
    std::lock_guard lock(mu_);
    pending_.push_back(job_id);
  }
  cv_.notify_one();
}

void JobQueue::CacheDataset(const std::string& id,
                            std::shared_ptr<const Dataset> dataset) {
  std::lock_guard lock(cache_mu_);
  cache_[id] = std::move(dataset);
}

void JobQueue::ForgetDataset(const std::string& id) {
  std::lock_guard lock(cache_mu_);
  cache_.erase(id);
}

std::shared_ptr<const Dataset> JobQueue::LoadDataset(const std::string& id) {
  {
    std::lock_guard lock(cache_mu_);
    if (auto it = cache_.find(id); it != cache_.end()) return it->second;
  }
  const auto record = store_.GetDataset(id);
  const auto bytes = store_.ReadDatasetBytes(id);
  if (!record || !bytes) {
    throw Error(ErrorCode::kIo, "dataset " + id + " no longer exists");
  }
  auto dataset = std::make_shared<const Dataset>(
      bibliotext::LoadDataset(*bytes, record->filename, resources_.mappings));
  CacheDataset(id, dataset);
  return dataset;
}

void JobQueue::WorkerLoop() {
  for (;;) {
    std::string job_id;
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [this] { return stopping_ || !pending_.empty(); });
      if (stopping_) return;
      job_id = std::move(pending_.front());
      pending_.pop_front();
    }
    Execute(job_id);
  }
}

void JobQueue::Execute(const std::string& job_id) {
  const auto job = store_.GetJob(job_id);
  if (!job) return;
  if (job->state == JobState::kQueued) {
    if (!store_.MarkRunning(job_id)) return;
  } else if (job->state != JobState::kRunning) {
    return;
  }
  try {
    const auto dataset = LoadDataset(job->dataset_id);
    const AnalysisOutput output =
        RunAnalysis(*dataset, job->analysis, job->params, resources_);
    store_.MarkDone(job_id, SerializeResult(output.result), output.files);
  } catch (const Error& e) {
    store_.MarkFailed(job_id, ErrorCodeName(e.code()), e.what());
  } catch (const std::exception& e) {
    store_.MarkFailed(job_id, "Internal", e.what());
  }
}

}  // namespace bibliotext::service
