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

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "litgraph/config.hpp"
#include "litgraph/graph_store.hpp"
#include "litgraph/serialize.hpp"

namespace litgraph::testing {

inline std::filesystem::path FixtureDir() { return LITGRAPH_FIXTURE_DIR; }
inline std::filesystem::path GoldenGraph() { return FixtureDir() / "golden" / "graph.nt"; }
inline std::filesystem::path GoldenStats() { return FixtureDir() / "golden" / "stats.csv"; }

inline std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline Config FixtureConfig() { return Config::Load(FixtureDir() / "litgraph.json"); }

inline std::shared_ptr<const store::GraphStore> GoldenStore() {
  static std::shared_ptr<const store::GraphStore> store = rdf::LoadStore(GoldenGraph());
  return store;
}

}  // namespace litgraph::testing
