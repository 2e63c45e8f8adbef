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

// bibliotextd: HTTP service. Configuration comes from BIBLIOTEXT_* environment
// variables; flags override them.

#include <CLI11.hpp>

#include <csignal>
#include <iostream>

#include "bibliotext/resources.hpp"
#include "bibliotext/service/server.hpp"

namespace {

bibliotext::service::Server* g_server = nullptr;

void HandleSignal(int) {
  if (g_server != nullptr) g_server->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  bibliotext::service::ServiceConfig config;
  try {
    config = bibliotext::service::ServiceConfig::FromEnv();
  } catch (const std::exception& e) {
    std::cerr << "bad environment configuration: " << e.what() << "\n";
    return 4;
  }

  CLI::App app{"Bibliotext HTTP service"};
  std::string data_dir = config.data_dir.string();
  app.add_option("--data-dir", data_dir, "Storage directory")->capture_default_str();
  app.add_option("--host", config.host, "Listen address")->capture_default_str();
  app.add_option("--port", config.port, "Listen port (0 picks a free one)")
      ->capture_default_str();
  app.add_option("--workers", config.workers, "Worker threads (0: CPU count)")
      ->capture_default_str();
  app.add_option("--upload-limit", config.upload_limit, "Maximum upload size in bytes")
      ->capture_default_str();
  app.add_option("--cors-origin", config.cors_origin, "Allowed browser origin")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  config.data_dir = data_dir;

  try {
    bibliotext::service::Server server(config, bibliotext::Resources::Default());
    const int port = server.Bind();
    if (port <= 0) {
      std::cerr << "cannot bind " << config.host << ":" << config.port << "\n";
      return 1;
    }
    g_server = &server;
    std::signal(SIGINT, HandleSignal);
    std::signal(SIGTERM, HandleSignal);
    std::cout << "listening on " << config.host << ":" << port << " (data in "
              << config.data_dir.string() << ")" << std::endl;
    server.ListenAfterBind();
    g_server = nullptr;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
