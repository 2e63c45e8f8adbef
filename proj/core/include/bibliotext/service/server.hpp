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

// HTTP API over the analysis engine.
//
//   POST   /datasets                 upload (multipart field "file" or raw body)
//   GET    /datasets/{id}
//   GET    /datasets/{id}/capabilities
//   DELETE /datasets/{id}
//   POST   /jobs                     {"dataset_id", "analysis", "params"}
//   GET    /jobs/{id}
//   GET    /jobs/{id}/events
//   GET    /jobs/{id}/result
//   GET    /jobs/{id}/result.csv?part=<file>
//   GET    /health

#ifndef BIBLIOTEXT_SERVICE_SERVER_HPP_
#define BIBLIOTEXT_SERVICE_SERVER_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "bibliotext/resources.hpp"

namespace bibliotext::service {

struct ServiceConfig {
  std::filesystem::path data_dir = "bibliotext-data";
  std::string host = "0.0.0.0";
  int port = 8080;
  std::size_t workers = 0;  // 0 selects the hardware concurrency
  std::size_t upload_limit = 50u * 1024 * 1024;
  std::string cors_origin = "*";

  // BIBLIOTEXT_DATA_DIR, BIBLIOTEXT_HOST, BIBLIOTEXT_PORT, BIBLIOTEXT_WORKERS,
  // BIBLIOTEXT_UPLOAD_LIMIT (bytes), BIBLIOTEXT_CORS_ORIGIN.
  static ServiceConfig FromEnv();
};

class Server {
 public:
  Server(ServiceConfig config, const Resources& resources);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds to config.port (or any free port when it is 0) and returns the
  // bound port, -1 on failure.
  int Bind();
  // Blocks serving requests until Stop().
  bool ListenAfterBind();
  void Stop();

  const ServiceConfig& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bibliotext::service

#endif  // BIBLIOTEXT_SERVICE_SERVER_HPP_
