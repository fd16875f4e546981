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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "litgraph/connectors.hpp"
#include "litgraph/service.hpp"

namespace litgraph {

// Shared pipeline configuration. Relative paths in a config file resolve
// against the file's directory.
struct Config {
  std::filesystem::path base_dir = ".";
  std::string namespace_base = std::string(IriMinter::kDefaultBase);

  std::filesystem::path wikidata_dump;
  std::filesystem::path openlibrary_dump;
  std::filesystem::path goodreads_dump;
  std::filesystem::path viaf_isbns;
  std::filesystem::path goodreads_sitemap;

  std::filesystem::path cache_dir;
  std::optional<connectors::Mode> connector_mode;
  double requests_per_second = 1.0;
  int max_retries = 4;

  std::filesystem::path regions_csv;      // empty: bundled default
  std::filesystem::path minority_groups;  // empty: bundled default

  double threshold = 0.7;
  std::uint64_t qa_seed = 42;
  std::size_t qa_per_bucket = 100;

  std::filesystem::path work_dir = "work";

  service::ServiceConfig service;
  std::filesystem::path store_path;

  // Throws Error{kConfig} for unknown keys, bad types or bad values.
  static Config Load(const std::filesystem::path& path);
  static Config FromJson(std::string_view text, const std::filesystem::path& base_dir);

  // LITGRAPH_BIND, LITGRAPH_PORT, LITGRAPH_STORE, LITGRAPH_CORS_ORIGINS
  // override the service section.
  void ApplyEnvironment();

  // Effective connector mode: --offline, then env, then config, then live.
  connectors::Mode EffectiveMode(bool offline) const;

  void Validate() const;
};

}  // namespace litgraph
