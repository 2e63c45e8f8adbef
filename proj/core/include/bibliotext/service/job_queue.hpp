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

// FIFO worker pool executing analysis jobs recorded in a Store.

#ifndef BIBLIOTEXT_SERVICE_JOB_QUEUE_HPP_
#define BIBLIOTEXT_SERVICE_JOB_QUEUE_HPP_

#include <condition_variable>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "bibliotext/engine.hpp"
#include "bibliotext/service/store.hpp"

namespace bibliotext::service {

class JobQueue {
 public:
  JobQueue(Store& store, const Resources& resources, std::size_t workers);
  ~JobQueue();
  JobQueue(const JobQueue&) = delete;
  JobQueue& operator=(const JobQueue&) = delete;

  // Re-executes jobs left running by a previous process, then queued ones,
  // in submission order.
  void Recover();
  void Enqueue(const std::string& job_id);
  void Stop();

  // Parsed datasets are cached; uploads register theirs directly.
  void CacheDataset(const std::string& id, std::shared_ptr<const Dataset> dataset);
  void ForgetDataset(const std::string& id);

  std::size_t workers() const { return threads_.size(); }

 private:
  void WorkerLoop();
  void Execute(const std::string& job_id);
  std::shared_ptr<const Dataset> LoadDataset(const std::string& id);

  Store& store_;
  const Resources& resources_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::string> pending_;
  bool stopping_ = false;
  std::vector<std::thread> threads_;

  std::mutex cache_mu_;
  std::map<std::string, std::shared_ptr<const Dataset>> cache_;
};

}  // namespace bibliotext::service

#endif  // BIBLIOTEXT_SERVICE_JOB_QUEUE_HPP_
