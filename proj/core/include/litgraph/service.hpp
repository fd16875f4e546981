// Copyright 2026 The litgraph Authors.
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

#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "litgraph/graph_store.hpp"
#include "litgraph/iri.hpp"

namespace httplib {
class Server;
}

namespace litgraph::service {

struct ServiceConfig {
  std::string bind_address = "127.0.0.1";
  int port = 8080;
  std::vector<std::string> cors_origins;  // "*" allows any origin
  std::filesystem::path static_dir;       // UI bundle, optional
  std::string namespace_base;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Request routing and JSON rendering, independent of the HTTP server. Every
// response is a pure function of the store snapshot and the request target.
class Api {
 public:
  Api(std::shared_ptr<store::StoreHandle> store, IriMinter minter);

  // target is the raw request target: percent-encoded path plus query.
  ApiResponse Handle(std::string_view method, std::string_view target) const;

 private:
  ApiResponse Search(const store::GraphStore& graph, std::string_view query) const;
  ApiResponse Entity(const store::GraphStore& graph, const std::string& iri) const;
  ApiResponse EntityNeighbors(const store::GraphStore& graph, const std::string& iri,
                              std::string_view query) const;
  ApiResponse Places(const store::GraphStore& graph, const std::string& iri) const;
  ApiResponse Stats(const store::GraphStore& graph) const;

  std::shared_ptr<store::StoreHandle> store_;
  IriMinter minter_;
};

class Server {
 public:
  Server(ServiceConfig config, std::shared_ptr<store::StoreHandle> store);
  ~Server();

  // Port 0 binds an ephemeral port. Returns the bound port.
  int Bind();
  // Blocks until Stop().
  void Run();
  void Stop();

 private:
  ServiceConfig config_;
  std::shared_ptr<store::StoreHandle> store_;
  std::unique_ptr<Api> api_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace litgraph::service
