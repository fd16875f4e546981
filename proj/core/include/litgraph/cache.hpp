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
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

namespace litgraph::connectors {

struct CachedResponse {
  std::string request_key;
  std::string body;
  std::int64_t fetched_at = 0;  // unix seconds
  int status = 0;
};

// Collapses whitespace runs to one space and trims, so logically identical
// queries share a cache entry.
std::string NormalizeQuery(std::string_view query);

// Hex SHA-256 of endpoint, a newline, and the normalized query.
std::string RequestKey(std::string_view endpoint, std::string_view query);

// Append-only response cache in one directory: responses.bin holds bodies
// back to back, index.jsonl holds one entry per response with its offset. A
// later entry for the same key supersedes earlier ones.
class ResponseCache {
 public:
  static constexpr std::string_view kContentFile = "responses.bin";
  static constexpr std::string_view kIndexFile = "index.jsonl";

  explicit ResponseCache(std::filesystem::path directory);

  std::optional<CachedResponse> Get(std::string_view key) const;
  CachedResponse Put(std::string_view endpoint, std::string_view query, int status,
                     std::string_view body, std::int64_t fetched_at);

  std::size_t size() const;
  const std::filesystem::path& directory() const noexcept { return directory_; }

 private:
  struct Entry {
    std::uint64_t offset = 0;
    std::uint64_t length = 0;
    int status = 0;
    std::int64_t fetched_at = 0;
  };

  void Load();

  std::filesystem::path directory_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace litgraph::connectors
